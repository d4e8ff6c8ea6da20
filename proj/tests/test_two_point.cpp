#include <cmath>
#include <vector>

#include "doctest.h"
#include "stdg/errors.hpp"
#include "stdg/two_point.hpp"
#include "support.hpp"

using namespace stdg;
using stdg::testing::StateSampler;

TEST_CASE("log mean") {
  CHECK(log_mean(3.0, 3.0) == 3.0);
  CHECK(log_mean(1.0, std::exp(1.0)) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));

  // Near-equal arguments: Taylor expansion of the log mean of (1, 1+eps)
  // is 1 + eps/2 - eps^2/12 + ...
  const double eps = 1e-12;
  const double lm = log_mean(1.0, 1.0 + eps);
  CHECK(std::fabs(lm - (1.0 + 0.5 * eps)) < 1e-15);

  CHECK_THROWS_AS(log_mean(-1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(log_mean(1.0, 0.0), std::invalid_argument);

  // min <= log mean <= arithmetic mean, and exact symmetry
  StateSampler sampler(74);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = sampler.positive();
    const double b = sampler.positive();
    const double m = log_mean(a, b);
    CHECK(m >= std::min(a, b));
    CHECK(m <= 0.5 * (a + b) + 1e-15);
    CHECK(log_mean(a, b) == log_mean(b, a));
  }
}

TEST_CASE("jump operator algebra") {
  StateSampler sampler(75);
  for (int trial = 0; trial < 1000; ++trial) {
    const double am = sampler.velocity(), ap = sampler.velocity();
    const double bm = sampler.velocity(), bp = sampler.velocity();
    const double lhs_ab = jump(am * bm, ap * bp);
    const double rhs_ab = mean(am, ap) * jump(bm, bp) + mean(bm, bp) * jump(am, ap);
    CHECK(std::fabs(lhs_ab - rhs_ab) <= 1e-13 * (std::fabs(lhs_ab) + 1.0));
    const double lhs_sq = jump(am * am, ap * ap);
    const double rhs_sq = 2.0 * mean(am, ap) * jump(am, ap);
    CHECK(std::fabs(lhs_sq - rhs_sq) <= 1e-13 * (std::fabs(lhs_sq) + 1.0));
  }
}

TEST_CASE("temporal EC state: consistency and closed forms") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  std::vector<double> u = {1.0, 0.0, 2.5}, s(3);
  temporal_state_ec(euler, u, u, s);
  for (int c = 0; c < 3; ++c) CHECK(s[c] == doctest::Approx(u[c]).epsilon(1e-15));

  // Shallow water closed form: left h=1, v1=0; right h=3, v1=2.
  const SystemDescriptor sw = SystemDescriptor::shallow_water(1.0);
  std::vector<double> l = {1.0, 0.0, 0.0}, r = {3.0, 6.0, 0.0}, ssw(3);
  temporal_state_ec(sw, l, r, ssw);
  CHECK(ssw[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ssw[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ssw[2] == 0.0);
}

TEST_CASE("temporal EC state: entropy conservation condition") {
  const SystemDescriptor systems[] = {
      SystemDescriptor::euler1d(), SystemDescriptor::euler3d(),
      SystemDescriptor::shallow_water(), SystemDescriptor::ideal_mhd()};
  for (const auto& sys : systems) {
    StateSampler sampler(1117 + static_cast<int>(sys.id));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::vector<double> l = sampler.conserved(sys);
      const std::vector<double> r = sampler.conserved(sys);
      std::vector<double> s(sys.p);
      temporal_state_ec(sys, l, r, s);
      const ConditionResidual res = tadmor_temporal_residual(sys, l, r, s);
      CHECK(std::fabs(res.residual) <= 1e-11 * std::max(1.0, res.scale));

      // symmetry
      std::vector<double> s2(sys.p);
      temporal_state_ec(sys, r, l, s2);
      for (int c = 0; c < sys.p; ++c) CHECK(s[c] == s2[c]);
    }
  }
}

TEST_CASE("upwind temporal state: dissipation inequality") {
  const SystemDescriptor systems[] = {
      SystemDescriptor::euler1d(), SystemDescriptor::euler3d(),
      SystemDescriptor::shallow_water(), SystemDescriptor::ideal_mhd()};
  for (const auto& sys : systems) {
    StateSampler sampler(2203 + static_cast<int>(sys.id));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::vector<double> l = sampler.conserved(sys);
      const std::vector<double> r = sampler.conserved(sys);
      std::vector<double> s(sys.p);
      temporal_state_upwind(l, s);
      for (int c = 0; c < sys.p; ++c) CHECK(s[c] == l[c]);
      const ConditionResidual res = tadmor_temporal_residual(sys, l, r, s);
      CHECK(res.residual <= 1e-12 * std::max(1.0, res.scale));
    }
  }

  const SystemDescriptor euler = SystemDescriptor::euler1d();
  std::vector<double> l = {1.0, 0.0, 2.5}, r = {1.125, 0.0, 2.75}, s(3);
  temporal_state_upwind(l, s);
  CHECK(tadmor_temporal_residual(euler, l, r, s).residual <= 0.0);
}

TEST_CASE("eckep flux: consistency, Tadmor, Jameson") {
  for (const auto& sys : {SystemDescriptor::euler1d(), SystemDescriptor::euler3d()}) {
    const int ndirs = sys.id == SystemId::Euler1D ? 1 : 3;
    StateSampler sampler(3301 + static_cast<int>(sys.id));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::vector<double> l = sampler.conserved(sys);
      const std::vector<double> r = sampler.conserved(sys);
      for (int d = 0; d < ndirs; ++d) {
        std::vector<double> f(sys.p), f2(sys.p);
        flux_eckep_euler(sys, l, r, d, f);
        flux_eckep_euler(sys, r, l, d, f2);
        for (int c = 0; c < sys.p; ++c) CHECK(f[c] == f2[c]);

        const ConditionResidual res = tadmor_spatial_residual(sys, l, r, d, f);
        CHECK(std::fabs(res.residual) <= 1e-11 * std::max(1.0, res.scale));

        for (double jr : jameson_residuals(sys, l, r, d)) {
          CHECK(std::fabs(jr) <= 1e-12 * std::max(1.0, res.scale));
        }
      }
    }

    // equal arguments reproduce the physical flux
    StateSampler one(17);
    const std::vector<double> u = one.conserved(sys);
    std::vector<double> f(sys.p), fp(sys.p);
    flux_eckep_euler(sys, u, u, 0, f);
    physical_flux(sys, u, 0, fp);
    for (int c = 0; c < sys.p; ++c) {
      CHECK(f[c] == doctest::Approx(fp[c]).epsilon(1e-13));
    }
  }
}

TEST_CASE("jameson first relation in closed form (1D momentum)") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  StateSampler sampler(3641);
  for (int trial = 0; trial < 500; ++trial) {
    const std::vector<double> l = sampler.conserved(euler);
    const std::vector<double> r = sampler.conserved(euler);
    std::vector<double> f(3);
    flux_eckep_euler(euler, l, r, 0, f);
    const double vbar = mean(l[1] / l[0], r[1] / r[0]);
    const double pbar = mean(pressure(euler, l), pressure(euler, r));
    CHECK(std::fabs(f[1] - (vbar * f[0] + pbar)) <=
          1e-12 * (std::fabs(f[1]) + 1.0));
  }
}

TEST_CASE("entropy jacobian H = du/dw") {
  for (const auto& sys : {SystemDescriptor::euler1d(), SystemDescriptor::euler3d()}) {
    StateSampler sampler(4493 + static_cast<int>(sys.id));
    const int p = sys.p;
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<double> u = sampler.conserved(sys);
      std::vector<double> h(p * p);
      euler_entropy_jacobian(sys, u, h);

      double hnorm = 0.0, asym = 0.0;
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
          hnorm = std::max(hnorm, std::fabs(h[i * p + j]));
          asym = std::max(asym, std::fabs(h[i * p + j] - h[j * p + i]));
        }
      }
      CHECK(asym <= 1e-10 * hnorm);

      // Columns of H against finite differences of u(w): perturb u, measure
      // dw, check dw ~ H^{-1} du by verifying H dw ~ du.
      const EntropyQuantities base = entropy_quantities(sys, u);
      const double step = 1e-6;
      for (int c = 0; c < p; ++c) {
        std::vector<double> up(u), um(u);
        up[c] += step;
        um[c] -= step;
        const EntropyQuantities qp = entropy_quantities(sys, up);
        const EntropyQuantities qm = entropy_quantities(sys, um);
        std::vector<double> dw(p);
        for (int kk = 0; kk < p; ++kk) dw[kk] = (qp.w[kk] - qm.w[kk]) / (2.0 * step);
        for (int i = 0; i < p; ++i) {
          double hdw = 0.0;
          for (int j = 0; j < p; ++j) hdw += h[i * p + j] * dw[j];
          const double expected = (i == c) ? 1.0 : 0.0;
          CHECK(std::fabs(hdw - expected) <= 2e-4 * std::max(1.0, hnorm * 1e-2));
        }
      }
      (void)base;
    }
  }
}

TEST_CASE("entropy-stable flux dissipates") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  const DissipationSpec none{DissipationKind::None};
  for (const DissipationKind kind :
       {DissipationKind::RusanovEntropy, DissipationKind::EntropyScaledMatrix}) {
    const DissipationSpec dis{kind};
    StateSampler sampler(5081);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::vector<double> l = sampler.conserved(euler);
      const std::vector<double> r = sampler.conserved(euler);
      std::vector<double> fes(3), fec(3);
      flux_es(euler, l, r, 0, dis, fes);
      flux_es(euler, l, r, 0, none, fec);

      const EntropyQuantities ql = entropy_quantities(euler, l);
      const EntropyQuantities qr = entropy_quantities(euler, r);
      double prod = 0.0, scale = 0.0;
      for (int c = 0; c < 3; ++c) {
        prod += (qr.w[c] - ql.w[c]) * (fes[c] - fec[c]);
        scale += std::fabs((qr.w[c] - ql.w[c]) * (fes[c] - fec[c]));
      }
      CHECK(prod <= 1e-12 * std::max(1.0, scale));
    }

    // equal states: no dissipation, flux equals the physical flux
    std::vector<double> u = {1.2, 0.6, 3.0}, f(3), fp(3);
    flux_es(euler, u, u, 0, dis, f);
    physical_flux(euler, u, 0, fp);
    for (int c = 0; c < 3; ++c) CHECK(f[c] == doctest::Approx(fp[c]).epsilon(1e-13));
  }
}

TEST_CASE("characteristic scaling reproduces the entropy jacobian") {
  // R T R^T with T = diag(rho/2gamma, rho(gamma-1)/gamma, rho/2gamma) must
  // equal du/dw at the same state.
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  StateSampler sampler(5183);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> u = sampler.conserved(euler);
    const double rho = u[0], v = u[1] / u[0];
    const double p = pressure(euler, u);
    const double c = std::sqrt(euler.gamma * p / rho);
    const double ht = (u[2] + p) / rho;
    const double R[3][3] = {{1.0, 1.0, 1.0},
                            {v - c, v, v + c},
                            {ht - v * c, 0.5 * v * v, ht + v * c}};
    const double T[3] = {rho / (2.0 * euler.gamma),
                         rho * (euler.gamma - 1.0) / euler.gamma,
                         rho / (2.0 * euler.gamma)};
    std::vector<double> h(9);
    euler_entropy_jacobian(euler, u, h);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double rtr = 0.0;
        for (int k = 0; k < 3; ++k) rtr += R[i][k] * T[k] * R[j][k];
        CHECK(std::fabs(rtr - h[i * 3 + j]) <=
              1e-12 * std::max(1.0, std::fabs(h[i * 3 + j])));
      }
    }
  }
}

TEST_CASE("temporal KEP conditions") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  StateSampler sampler(6211);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::vector<double> l = sampler.conserved(euler);
    const std::vector<double> r = sampler.conserved(euler);
    std::vector<double> s(3);
    temporal_state_ec(euler, l, r, s);
    for (double res : check_kep_temporal(euler, l, r, s)) {
      CHECK(std::fabs(res) <= 1e-12 * (std::fabs(s[1]) + 1.0));
    }
  }

  // upwind on an equal pair: zero residual
  std::vector<double> u = {2.0, 2.0, 3.0}, s(3);
  temporal_state_upwind(u, s);
  for (double res : check_kep_temporal(euler, u, u, s)) CHECK(res == 0.0);

  // upwind on unequal pairs: [[V]]^T U* = -rho_minus/2 sum [[v_l]]^2 <= 0
  for (int trial = 0; trial < 500; ++trial) {
    const std::vector<double> l = sampler.conserved(euler);
    const std::vector<double> r = sampler.conserved(euler);
    std::vector<double> su(3);
    temporal_state_upwind(l, su);
    const KineticQuantities kl = kinetic_quantities(euler, l);
    const KineticQuantities kr = kinetic_quantities(euler, r);
    double vjump_dot = 0.0;
    for (int c = 0; c < 3; ++c) vjump_dot += (kr.v[c] - kl.v[c]) * su[c];
    const double vj = r[1] / r[0] - l[1] / l[0];
    const double closed = -0.5 * l[0] * vj * vj;
    CHECK(vjump_dot <= 1e-12 * (std::fabs(closed) + 1.0));
    CHECK(std::fabs(vjump_dot - closed) <= 1e-11 * (std::fabs(closed) + 1.0));
  }
}
