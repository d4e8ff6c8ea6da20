#ifndef STDG_SBP_HPP
#define STDG_SBP_HPP

#include <span>
#include <vector>

namespace stdg {

/// Legendre-Gauss-Lobatto collocation operator of one polynomial degree:
/// nodes, quadrature weights, the nodal derivative matrix D, and Q = M D
/// with the summation-by-parts property Q + Q^T = B = diag(-1, 0, ..., 0, 1).
///
/// Immutable after construction; safe to share across threads.
class SbpOperator {
public:
  int degree() const { return degree_; }
  int num_nodes() const { return degree_ + 1; }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  double node(int i) const { return nodes_[i]; }
  double weight(int i) const { return weights_[i]; }
  double d(int i, int j) const { return deriv_[i * (degree_ + 1) + j]; }
  double q(int i, int j) const { return weights_[i] * d(i, j); }
  /// Boundary matrix entry B_ii.
  double b(int i) const { return i == 0 ? -1.0 : (i == degree_ ? 1.0 : 0.0); }

  const std::vector<double>& derivative_matrix() const { return deriv_; }
  const std::vector<double>& barycentric_weights() const { return bary_; }

  friend SbpOperator lgl_rule(int degree);

private:
  int degree_ = 0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> deriv_; // row-major (degree+1)^2
  std::vector<double> bary_;
};

/// Build the LGL rule of the given degree (1 <= degree <= 20). Nodes are the
/// roots of (1 - x^2) P'_K(x) found by Newton iteration from Chebyshev
/// initial guesses; weights are 2 / (K (K+1) P_K(x_i)^2).
SbpOperator lgl_rule(int degree);

/// Evaluate the interpolant of the nodal data at x in [-1, 1] using the
/// precomputed barycentric weights. Exact at the nodes.
double lagrange_eval(const SbpOperator& rule, std::span<const double> nodal_values,
                     double x);

/// Row i of the interpolation matrix from `rule`'s nodes to the point x,
/// i.e. the Lagrange basis values l_i(x).
void lagrange_basis(const SbpOperator& rule, double x, std::span<double> out);

/// Residuals of the three split-form identities satisfied by Q. Each value
/// is the largest absolute mismatch between the equivalent expressions of
/// one identity, evaluated with the given nodal data.
struct SplitFormResiduals {
  double first = 0.0;  // sum_ij Q_ij (a_i - a_j)            vs  -(a_K - a_0)
  double second = 0.0; // sum_ij Q_ij (a_i - a_j){{b}}_(i,j) vs its two forms
  double third = 0.0;  // identity with {{b}}_(i,j){{c}}_(i,j)
};

SplitFormResiduals split_form_identities(const SbpOperator& rule,
                                         std::span<const double> a,
                                         std::span<const double> b,
                                         std::span<const double> c);

} // namespace stdg

#endif
