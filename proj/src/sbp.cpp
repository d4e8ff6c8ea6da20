#include "stdg/sbp.hpp"

#include <cmath>
#include <numbers>

#include "stdg/errors.hpp"

namespace stdg {

namespace {

// Legendre P_K and its first two derivatives at x, by the three-term
// recurrence; P''_K from the Legendre differential equation.
struct LegendreEval {
  double p, dp, ddp;
};

LegendreEval legendre(int degree, double x) {
  double p_prev = 1.0, p = x;
  double dp_prev = 0.0, dp = 1.0;
  if (degree == 0) return {1.0, 0.0, 0.0};
  for (int k = 2; k <= degree; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    const double dp_next = dp_prev + (2.0 * k - 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  double ddp = 0.0;
  const double one_minus_x2 = 1.0 - x * x;
  if (one_minus_x2 > 1e-14) {
    ddp = (2.0 * x * dp - degree * (degree + 1.0) * p) / one_minus_x2;
  }
  return {p, dp, ddp};
}

} // namespace

SbpOperator lgl_rule(int degree) {
  if (degree < 1 || degree > 20) {
    throw ConfigError("lgl_rule: degree must lie in [1, 20], got " +
                      std::to_string(degree));
  }
  const int n = degree + 1;
  SbpOperator op;
  op.degree_ = degree;
  op.nodes_.assign(n, 0.0);
  op.weights_.assign(n, 0.0);

  op.nodes_[0] = -1.0;
  op.nodes_[degree] = 1.0;

  // Interior nodes: roots of P'_K, Newton from Chebyshev-Gauss-Lobatto guesses.
  for (int i = 1; i < degree; ++i) {
    double x = -std::cos(std::numbers::pi * i / degree);
    for (int it = 0; it < 50; ++it) {
      const LegendreEval le = legendre(degree, x);
      const double dx = le.dp / le.ddp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    op.nodes_[i] = x;
  }
  // Symmetrize so paired nodes cancel exactly.
  for (int i = 0; i < n / 2; ++i) {
    const double s = 0.5 * (op.nodes_[i] - op.nodes_[degree - i]);
    op.nodes_[i] = s;
    op.nodes_[degree - i] = -s;
  }
  if (n % 2 == 1) op.nodes_[degree / 2] = 0.0;

  for (int i = 0; i < n; ++i) {
    const double pk = legendre(degree, op.nodes_[i]).p;
    op.weights_[i] = 2.0 / (degree * (degree + 1.0) * pk * pk);
  }

  // Barycentric weights, normalized for evaluation stability.
  op.bary_.assign(n, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i) op.bary_[i] *= (op.nodes_[i] - op.nodes_[j]);
    }
    op.bary_[i] = 1.0 / op.bary_[i];
  }
  double bmax = 0.0;
  for (double w : op.bary_) bmax = std::max(bmax, std::fabs(w));
  for (double& w : op.bary_) w /= bmax;

  // Derivative matrix from the barycentric weights, diagonal by the
  // negative-sum trick so rows annihilate constants exactly.
  op.deriv_.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dij = (op.bary_[j] / op.bary_[i]) / (op.nodes_[i] - op.nodes_[j]);
      op.deriv_[i * n + j] = dij;
      diag -= dij;
    }
    op.deriv_[i * n + i] = diag;
  }
  return op;
}

void lagrange_basis(const SbpOperator& rule, double x, std::span<double> out) {
  const int n = rule.num_nodes();
  for (int i = 0; i < n; ++i) {
    if (x == rule.node(i)) {
      for (int j = 0; j < n; ++j) out[j] = (j == i) ? 1.0 : 0.0;
      return;
    }
  }
  double denom = 0.0;
  for (int i = 0; i < n; ++i) {
    out[i] = rule.barycentric_weights()[i] / (x - rule.node(i));
    denom += out[i];
  }
  for (int i = 0; i < n; ++i) out[i] /= denom;
}

double lagrange_eval(const SbpOperator& rule, std::span<const double> nodal_values,
                     double x) {
  const int n = rule.num_nodes();
  if (static_cast<int>(nodal_values.size()) != n) {
    throw ConfigError("lagrange_eval: expected " + std::to_string(n) + " values");
  }
  for (int i = 0; i < n; ++i) {
    if (x == rule.node(i)) return nodal_values[i];
  }
  double num = 0.0, denom = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = rule.barycentric_weights()[i] / (x - rule.node(i));
    num += t * nodal_values[i];
    denom += t;
  }
  return num / denom;
}

SplitFormResiduals split_form_identities(const SbpOperator& rule,
                                         std::span<const double> a,
                                         std::span<const double> b,
                                         std::span<const double> c) {
  const int n = rule.num_nodes();
  const int K = rule.degree();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(c.size()) != n) {
    throw ConfigError("split_form_identities: nodal vectors must have length " +
                      std::to_string(n));
  }

  SplitFormResiduals res;

  double lhs1 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) lhs1 += rule.q(i, j) * (a[i] - a[j]);
  }
  res.first = std::fabs(lhs1 - (-(a[K] - a[0])));

  double lhs2 = 0.0, rhs2a = 0.0, rhs2b = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double qij = rule.q(i, j);
      lhs2 += qij * (a[i] - a[j]) * 0.5 * (b[i] + b[j]);
      rhs2a += qij * a[i] * b[j];
      rhs2b -= qij * a[j] * b[i];
    }
  }
  rhs2a -= a[K] * b[K] - a[0] * b[0];
  res.second = std::max(std::fabs(lhs2 - rhs2a), std::fabs(lhs2 - rhs2b));

  double lhs3 = 0.0, rhs3 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double qij = rule.q(i, j);
      lhs3 += qij * (a[i] - a[j]) * 0.25 * (b[i] + b[j]) * (c[i] + c[j]);
      rhs3 += 0.5 * qij * (a[i] * b[i] * c[j] - a[j] * b[i] * c[j] - a[j] * b[i] * c[i]);
    }
  }
  res.third = std::fabs(lhs3 - rhs3);
  return res;
}

} // namespace stdg
