#include "stdg/two_point.hpp"

#include <algorithm>
#include <cmath>

#include "stdg/errors.hpp"

namespace stdg {

double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("log_mean: arguments must be positive");
  }
  if (a > b) std::swap(a, b);
  if (a == b) return a;
  const double zeta = a / b;
  const double f = (zeta - 1.0) / (zeta + 1.0);
  const double u = f * f;
  if (u < 1e-4) {
    const double series = 1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u / 7.0));
    return (a + b) / (2.0 * series);
  }
  return (a - b) / (std::log(a) - std::log(b));
}

namespace {

struct EulerPrim {
  double rho, v[3], p, beta;
};

EulerPrim euler_prim(const SystemDescriptor& sys, std::span<const double> u) {
  require_admissible(sys, u);
  EulerPrim q{};
  q.rho = u[0];
  const int nd = sys.velocity_dims();
  for (int l = 0; l < nd; ++l) q.v[l] = u[1 + l] / u[0];
  q.p = pressure(sys, u);
  q.beta = q.rho / (2.0 * q.p);
  return q;
}

} // namespace

void temporal_state_ec(const SystemDescriptor& sys, std::span<const double> left,
                       std::span<const double> right, std::span<double> state) {
  switch (sys.id) {
    case SystemId::ShallowWater: {
      require_admissible(sys, left);
      require_admissible(sys, right);
      const double h = mean(left[0], right[0]);
      const double v1 = mean(left[1] / left[0], right[1] / right[0]);
      const double v2 = mean(left[2] / left[0], right[2] / right[0]);
      state[0] = h;
      state[1] = h * v1;
      state[2] = h * v2;
      return;
    }
    case SystemId::Euler1D:
    case SystemId::Euler3D: {
      const EulerPrim l = euler_prim(sys, left);
      const EulerPrim r = euler_prim(sys, right);
      const int nd = sys.velocity_dims();
      const double rho_ln = log_mean(l.rho, r.rho);
      const double beta_ln = log_mean(l.beta, r.beta);
      double vbar[3] = {0, 0, 0};
      double vbar2 = 0.0, v2bar = 0.0;
      for (int d = 0; d < nd; ++d) {
        vbar[d] = mean(l.v[d], r.v[d]);
        vbar2 += vbar[d] * vbar[d];
        v2bar += mean(l.v[d] * l.v[d], r.v[d] * r.v[d]);
      }
      state[0] = rho_ln;
      for (int d = 0; d < nd; ++d) state[1 + d] = rho_ln * vbar[d];
      state[1 + nd] = rho_ln / (2.0 * beta_ln * (sys.gamma - 1.0)) +
                      rho_ln * (vbar2 - 0.5 * v2bar);
      return;
    }
    case SystemId::IdealMhd: {
      const EulerPrim l = euler_prim(sys, left);
      const EulerPrim r = euler_prim(sys, right);
      const double rho_ln = log_mean(l.rho, r.rho);
      const double beta_ln = log_mean(l.beta, r.beta);
      double vbar[3], Bbar[3];
      double vbar2 = 0.0, v2bar = 0.0, Bbar2 = 0.0, B2bar = 0.0;
      for (int d = 0; d < 3; ++d) {
        vbar[d] = mean(l.v[d], r.v[d]);
        vbar2 += vbar[d] * vbar[d];
        v2bar += mean(l.v[d] * l.v[d], r.v[d] * r.v[d]);
        Bbar[d] = mean(left[5 + d], right[5 + d]);
        Bbar2 += Bbar[d] * Bbar[d];
        B2bar += mean(left[5 + d] * left[5 + d], right[5 + d] * right[5 + d]);
      }
      state[0] = rho_ln;
      for (int d = 0; d < 3; ++d) state[1 + d] = rho_ln * vbar[d];
      state[4] = rho_ln / (2.0 * beta_ln * (sys.gamma - 1.0)) +
                 rho_ln * (vbar2 - 0.5 * v2bar) + (Bbar2 - 0.5 * B2bar);
      for (int d = 0; d < 3; ++d) state[5 + d] = Bbar[d];
      return;
    }
  }
}

void temporal_state_upwind(std::span<const double> left, std::span<double> state) {
  std::copy(left.begin(), left.end(), state.begin());
}

void flux_eckep_euler(const SystemDescriptor& sys, std::span<const double> left,
                      std::span<const double> right, int dir, std::span<double> flux) {
  if (sys.id != SystemId::Euler1D && sys.id != SystemId::Euler3D) {
    throw UnsupportedSystemError("flux_eckep_euler: Euler systems only");
  }
  const EulerPrim l = euler_prim(sys, left);
  const EulerPrim r = euler_prim(sys, right);
  const int nd = sys.velocity_dims();
  const int d0 = (sys.id == SystemId::Euler1D) ? 0 : dir;

  const double rho_ln = log_mean(l.rho, r.rho);
  const double beta_ln = log_mean(l.beta, r.beta);
  const double pbar = mean(l.p, r.p);
  double vbar[3] = {0, 0, 0};
  double vbar2 = 0.0, v2bar = 0.0;
  for (int d = 0; d < nd; ++d) {
    vbar[d] = mean(l.v[d], r.v[d]);
    vbar2 += vbar[d] * vbar[d];
    v2bar += mean(l.v[d] * l.v[d], r.v[d] * r.v[d]);
  }
  const double pvbar = mean(l.p * l.v[d0], r.p * r.v[d0]);
  const double vn = vbar[d0];

  flux[0] = rho_ln * vn;
  for (int d = 0; d < nd; ++d) flux[1 + d] = rho_ln * vn * vbar[d];
  flux[1 + d0] += pbar;
  flux[1 + nd] = (rho_ln * (vbar2 - 0.5 * v2bar) +
                  rho_ln / (2.0 * beta_ln * (sys.gamma - 1.0))) *
                     vn +
                 2.0 * pbar * vn - pvbar;
}

void euler_entropy_jacobian(const SystemDescriptor& sys, std::span<const double> u,
                            std::span<double> h) {
  if (sys.id != SystemId::Euler1D && sys.id != SystemId::Euler3D) {
    throw UnsupportedSystemError("euler_entropy_jacobian: Euler systems only");
  }
  require_admissible(sys, u);
  const int p = sys.p;
  const int nd = sys.velocity_dims();
  const double rho = u[0];
  const double E = u[1 + nd];
  const double pres = pressure(sys, u);
  double v[3] = {0, 0, 0};
  for (int d = 0; d < nd; ++d) v[d] = u[1 + d] / rho;

  auto at = [&](int i, int j) -> double& { return h[i * p + j]; };
  at(0, 0) = rho;
  for (int d = 0; d < nd; ++d) {
    at(0, 1 + d) = rho * v[d];
    at(1 + d, 0) = rho * v[d];
  }
  at(0, 1 + nd) = E;
  at(1 + nd, 0) = E;
  for (int d = 0; d < nd; ++d) {
    for (int e = 0; e < nd; ++e) at(1 + d, 1 + e) = rho * v[d] * v[e];
    at(1 + d, 1 + d) += pres;
    at(1 + d, 1 + nd) = (E + pres) * v[d];
    at(1 + nd, 1 + d) = (E + pres) * v[d];
  }
  at(1 + nd, 1 + nd) =
      (E + pres) * (E + pres) / rho -
      sys.gamma * pres * pres / (rho * (sys.gamma - 1.0));
}

void flux_es(const SystemDescriptor& sys, std::span<const double> left,
             std::span<const double> right, int dir, const DissipationSpec& dis,
             std::span<double> flux) {
  flux_eckep_euler(sys, left, right, dir, flux);
  if (dis.kind == DissipationKind::None) return;

  const int p = sys.p;
  double wjump[8];
  {
    const EntropyQuantities ql = entropy_quantities(sys, left);
    const EntropyQuantities qr = entropy_quantities(sys, right);
    for (int c = 0; c < p; ++c) wjump[c] = qr.w[c] - ql.w[c];
  }
  double umean[8];
  for (int c = 0; c < p; ++c) umean[c] = mean(left[c], right[c]);

  if (dis.kind == DissipationKind::RusanovEntropy || sys.id == SystemId::Euler3D) {
    const double lambda =
        std::max(max_wavespeed(sys, left), max_wavespeed(sys, right));
    double hmat[64];
    euler_entropy_jacobian(sys, {umean, static_cast<size_t>(p)},
                           {hmat, static_cast<size_t>(p * p)});
    for (int i = 0; i < p; ++i) {
      double s = 0.0;
      for (int j = 0; j < p; ++j) s += hmat[i * p + j] * wjump[j];
      flux[i] -= 0.5 * lambda * s;
    }
    return;
  }

  // Characteristic dissipation: eigenvectors of the flux Jacobian at the
  // Roe-averaged state, with the entropy scaling T so that R T R^T = du/dw.
  const double sl = std::sqrt(left[0]);
  const double sr = std::sqrt(right[0]);
  const double rho = sl * sr;
  const double v = (sl * left[1] / left[0] + sr * right[1] / right[0]) / (sl + sr);
  const double hl = (left[2] + pressure(sys, left)) / left[0];
  const double hr = (right[2] + pressure(sys, right)) / right[0];
  const double enthalpy = (sl * hl + sr * hr) / (sl + sr);
  const double c = std::sqrt((sys.gamma - 1.0) * (enthalpy - 0.5 * v * v));
  const double evec[3][3] = {{1.0, 1.0, 1.0},
                             {v - c, v, v + c},
                             {enthalpy - v * c, 0.5 * v * v, enthalpy + v * c}};
  const double scaling[3] = {rho / (2.0 * sys.gamma),
                             rho * (sys.gamma - 1.0) / sys.gamma,
                             rho / (2.0 * sys.gamma)};
  const double lam[3] = {std::fabs(v - c), std::fabs(v), std::fabs(v + c)};
  for (int k = 0; k < 3; ++k) {
    double rtw = 0.0;
    for (int j = 0; j < 3; ++j) rtw += evec[j][k] * wjump[j];
    const double coeff = 0.5 * lam[k] * scaling[k] * rtw;
    for (int i = 0; i < 3; ++i) flux[i] -= coeff * evec[i][k];
  }
}

std::vector<double> check_kep_temporal(const SystemDescriptor& sys,
                                       std::span<const double> left,
                                       std::span<const double> right,
                                       std::span<const double> state) {
  if (sys.id != SystemId::Euler1D && sys.id != SystemId::Euler3D) {
    throw UnsupportedSystemError("check_kep_temporal: Euler systems only");
  }
  const int nd = sys.velocity_dims();
  std::vector<double> res(nd);
  for (int d = 0; d < nd; ++d) {
    const double vbar = mean(left[1 + d] / left[0], right[1 + d] / right[0]);
    res[d] = state[1 + d] - vbar * state[0];
  }
  return res;
}

std::vector<double> jameson_residuals(const SystemDescriptor& sys,
                                      std::span<const double> left,
                                      std::span<const double> right, int dir) {
  const int p = sys.p;
  const int nd = sys.velocity_dims();
  const int d0 = (sys.id == SystemId::Euler1D) ? 0 : dir;
  std::vector<double> flux(p);
  flux_eckep_euler(sys, left, right, dir, flux);
  const double pbar = mean(pressure(sys, left), pressure(sys, right));
  std::vector<double> res(nd);
  for (int m = 0; m < nd; ++m) {
    const double vbar = mean(left[1 + m] / left[0], right[1 + m] / right[0]);
    res[m] = flux[1 + m] - vbar * flux[0] - (m == d0 ? pbar : 0.0);
  }
  return res;
}

ConditionResidual tadmor_spatial_residual(const SystemDescriptor& sys,
                                          std::span<const double> left,
                                          std::span<const double> right, int dir,
                                          std::span<const double> flux) {
  const EntropyQuantities ql = entropy_quantities(sys, left);
  const EntropyQuantities qr = entropy_quantities(sys, right);
  ConditionResidual out;
  double lhs = 0.0;
  for (int c = 0; c < sys.p; ++c) {
    const double term = (qr.w[c] - ql.w[c]) * flux[c];
    lhs += term;
    out.scale += std::fabs(term);
  }
  const double rhs = qr.psi[dir] - ql.psi[dir];
  out.scale += std::fabs(rhs);
  out.residual = lhs - rhs;
  return out;
}

ConditionResidual tadmor_temporal_residual(const SystemDescriptor& sys,
                                           std::span<const double> left,
                                           std::span<const double> right,
                                           std::span<const double> state) {
  const EntropyQuantities ql = entropy_quantities(sys, left);
  const EntropyQuantities qr = entropy_quantities(sys, right);
  ConditionResidual out;
  double lhs = 0.0;
  for (int c = 0; c < sys.p; ++c) {
    const double term = (qr.w[c] - ql.w[c]) * state[c];
    lhs += term;
    out.scale += std::fabs(term);
  }
  const double rhs = qr.phi - ql.phi;
  out.scale += std::fabs(rhs);
  out.residual = lhs - rhs;
  return out;
}

} // namespace stdg
