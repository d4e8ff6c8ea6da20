#include <cmath>
#include <vector>

#include "doctest.h"
#include "stdg/errors.hpp"
#include "stdg/systems.hpp"
#include "support.hpp"

using namespace stdg;
using stdg::testing::StateSampler;

namespace {

// Central finite difference of a scalar functional of the state.
template <class Fn>
std::vector<double> fd_gradient(const SystemDescriptor& sys, std::vector<double> u,
                                Fn&& fn, double h = 1e-6) {
  std::vector<double> g(sys.p);
  for (int c = 0; c < sys.p; ++c) {
    const double saved = u[c];
    u[c] = saved + h;
    const double fp = fn(u);
    u[c] = saved - h;
    const double fm = fn(u);
    u[c] = saved;
    g[c] = (fp - fm) / (2.0 * h);
  }
  return g;
}

} // namespace

TEST_CASE("physical flux: worked states") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  std::vector<double> u = {1.0, 0.0, 2.5};
  std::vector<double> f(3);
  physical_flux(euler, u, 0, f);
  CHECK(pressure(euler, u) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f[2] == 0.0);

  const SystemDescriptor sw = SystemDescriptor::shallow_water(1.0);
  std::vector<double> usw = {2.0, 0.0, 0.0};
  std::vector<double> fsw(3);
  physical_flux(sw, usw, 0, fsw);
  CHECK(fsw[0] == 0.0);
  CHECK(fsw[1] == doctest::Approx(2.0).epsilon(1e-15)); // g h^2 / 2
  CHECK(fsw[2] == 0.0);
}

TEST_CASE("physical flux: at rest only the pressure block survives") {
  const SystemDescriptor e3 = SystemDescriptor::euler3d();
  std::vector<double> u = {2.0, 0.0, 0.0, 0.0, 7.0};
  const double p = pressure(e3, u);
  for (int d = 0; d < 3; ++d) {
    std::vector<double> f(5);
    physical_flux(e3, u, d, f);
    for (int c = 0; c < 5; ++c) {
      if (c == 1 + d) {
        CHECK(f[c] == doctest::Approx(p).epsilon(1e-15));
      } else {
        CHECK(f[c] == 0.0);
      }
    }
  }
  const SystemDescriptor mhd = SystemDescriptor::ideal_mhd();
  std::vector<double> um = {1.0, 0.0, 0.0, 0.0, 2.5, 0.0, 0.0, 0.0};
  std::vector<double> fm(8);
  physical_flux(mhd, um, 0, fm);
  for (int c = 0; c < 8; ++c) {
    if (c == 1) {
      CHECK(fm[c] == doctest::Approx(pressure(mhd, um)).epsilon(1e-15));
    } else {
      CHECK(fm[c] == 0.0);
    }
  }
}

TEST_CASE("entropy quantities: worked states") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  std::vector<double> u = {1.0, 0.0, 2.5};
  const EntropyQuantities q = entropy_quantities(euler, u);
  CHECK(q.beta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::fabs(q.varsigma) < 1e-15);
  CHECK(q.w[0] == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(q.w[1] == 0.0);
  CHECK(q.w[2] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(q.phi == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(q.s) < 1e-15);

  const SystemDescriptor sw = SystemDescriptor::shallow_water(1.0);
  std::vector<double> usw = {1.0, 1.0, 0.0};
  const EntropyQuantities qs = entropy_quantities(sw, usw);
  CHECK(qs.w[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(qs.w[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(qs.w[2] == 0.0);
  CHECK(qs.phi == doctest::Approx(0.5).epsilon(1e-15));

  // MHD with B = 0 reduces to the Euler potential phi = rho.
  const SystemDescriptor mhd = SystemDescriptor::ideal_mhd();
  std::vector<double> um = {1.3, 0.4, -0.2, 0.1, 3.0, 0.0, 0.0, 0.0};
  CHECK(entropy_quantities(mhd, um).phi == doctest::Approx(1.3).epsilon(1e-14));
}

TEST_CASE("entropy variables are the gradient of the entropy") {
  const SystemDescriptor systems[] = {
      SystemDescriptor::euler1d(), SystemDescriptor::euler3d(),
      SystemDescriptor::shallow_water(), SystemDescriptor::ideal_mhd()};
  for (const auto& sys : systems) {
    StateSampler sampler(91 + static_cast<int>(sys.id));
    for (int trial = 0; trial < 500; ++trial) {
      const std::vector<double> u = sampler.conserved(sys);
      const EntropyQuantities q = entropy_quantities(sys, u);
      const auto g = fd_gradient(sys, u, [&](const std::vector<double>& v) {
        return entropy_quantities(sys, v).s;
      });
      for (int c = 0; c < sys.p; ++c) {
        CHECK(std::fabs(g[c] - q.w[c]) <= 1e-5 * std::max(1.0, std::fabs(q.w[c])));
      }
    }
  }
}

TEST_CASE("potentials: phi = w^T u - s and psi = w^T f - f^s") {
  const SystemDescriptor systems[] = {
      SystemDescriptor::euler1d(), SystemDescriptor::euler3d(),
      SystemDescriptor::shallow_water(), SystemDescriptor::ideal_mhd()};
  for (const auto& sys : systems) {
    StateSampler sampler(417 + static_cast<int>(sys.id));
    const int ndirs = (sys.id == SystemId::Euler1D)  ? 1
                      : (sys.id == SystemId::ShallowWater) ? 2
                                                           : 3;
    for (int trial = 0; trial < 200; ++trial) {
      const std::vector<double> u = sampler.conserved(sys);
      const EntropyQuantities q = entropy_quantities(sys, u);
      double wu = 0.0;
      for (int c = 0; c < sys.p; ++c) wu += q.w[c] * u[c];
      CHECK(std::fabs(wu - q.s - q.phi) <= 1e-12 * (std::fabs(wu) + std::fabs(q.s)));

      for (int d = 0; d < ndirs; ++d) {
        std::vector<double> f(sys.p);
        physical_flux(sys, u, d, f);
        double wf = 0.0;
        for (int c = 0; c < sys.p; ++c) wf += q.w[c] * f[c];
        double rhs = wf - entropy_flux(sys, u, d);
        if (sys.id == SystemId::IdealMhd) {
          rhs += mhd_theta_upsilon(sys, u).theta * u[5 + d];
        }
        CHECK(std::fabs(q.psi[d] - rhs) <=
              1e-12 * (std::fabs(wf) + std::fabs(q.psi[d]) + 1.0));
      }
    }
  }
}

TEST_CASE("euler entropy flux closed form") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  StateSampler sampler(555);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> u = sampler.conserved(euler);
    const EntropyQuantities q = entropy_quantities(euler, u);
    const double v = u[1] / u[0];
    const double fs = -u[0] * v * q.varsigma / (euler.gamma - 1.0);
    CHECK(entropy_flux(euler, u, 0) ==
          doctest::Approx(fs).epsilon(1e-12).scale(std::fabs(fs) + 1.0));
  }
}

TEST_CASE("entropy-flux compatibility (f^s)' = w^T f'") {
  const SystemDescriptor systems[] = {
      SystemDescriptor::euler1d(), SystemDescriptor::euler3d(),
      SystemDescriptor::shallow_water()};
  for (const auto& sys : systems) {
    StateSampler sampler(833 + static_cast<int>(sys.id));
    const int ndirs = (sys.id == SystemId::Euler1D)  ? 1
                      : (sys.id == SystemId::ShallowWater) ? 2
                                                           : 3;
    for (int trial = 0; trial < 50; ++trial) {
      const std::vector<double> u = sampler.conserved(sys);
      const EntropyQuantities q = entropy_quantities(sys, u);
      std::vector<double> delta(sys.p);
      for (int c = 0; c < sys.p; ++c) delta[c] = sampler.uniform(-1.0, 1.0);
      for (int d = 0; d < ndirs; ++d) {
        // w^T (df/du) delta by finite differences of the flux
        const double h = 1e-6;
        std::vector<double> up(u), um(u), fp(sys.p), fm(sys.p);
        for (int c = 0; c < sys.p; ++c) {
          up[c] += h * delta[c];
          um[c] -= h * delta[c];
        }
        physical_flux(sys, up, d, fp);
        physical_flux(sys, um, d, fm);
        double lhs = 0.0;
        for (int c = 0; c < sys.p; ++c) lhs += q.w[c] * (fp[c] - fm[c]) / (2.0 * h);
        const double rhs =
            (entropy_flux(sys, up, d) - entropy_flux(sys, um, d)) / (2.0 * h);
        CHECK(std::fabs(lhs - rhs) <= 1e-4 * std::max(1.0, std::fabs(rhs)));
      }
    }
  }
}

TEST_CASE("max wavespeed: worked states") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  std::vector<double> u = {1.0, 0.0, 2.5};
  CHECK(max_wavespeed(euler, u) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));
  std::vector<double> moving = {1.0, 2.0, 4.5}; // v = 2, p = 1
  CHECK(max_wavespeed(euler, moving) ==
        doctest::Approx(2.0 + std::sqrt(1.4)).epsilon(1e-14));

  const SystemDescriptor sw = SystemDescriptor::shallow_water(1.0);
  std::vector<double> usw = {1.0, 0.0, 0.0};
  CHECK(max_wavespeed(sw, usw) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kinetic quantities") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  std::vector<double> rest = {1.0, 0.0, 2.5};
  const KineticQuantities kr = kinetic_quantities(euler, rest);
  CHECK(kr.kappa == 0.0);
  CHECK(kr.v[0] == 0.0);
  CHECK(kr.v[1] == 0.0);

  std::vector<double> u = {2.0, 2.0, 3.0};
  const KineticQuantities k = kinetic_quantities(euler, u);
  CHECK(k.v[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(k.v[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k.v[2] == 0.0);
  CHECK(k.kappa == doctest::Approx(1.0).epsilon(1e-15));

  // v^T u = kappa for random admissible states
  for (const auto& sys : {SystemDescriptor::euler1d(), SystemDescriptor::euler3d()}) {
    StateSampler sampler(1303 + static_cast<int>(sys.id));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::vector<double> us = sampler.conserved(sys);
      const KineticQuantities kk = kinetic_quantities(sys, us);
      double vu = 0.0;
      for (int c = 0; c < sys.p; ++c) vu += kk.v[c] * us[c];
      CHECK(std::fabs(vu - kk.kappa) <= 1e-12 * std::max(1.0, std::fabs(kk.kappa)));
    }
  }

  CHECK_THROWS_AS(kinetic_quantities(SystemDescriptor::shallow_water(), rest),
                  UnsupportedSystemError);
}

TEST_CASE("mhd theta and upsilon") {
  const SystemDescriptor mhd = SystemDescriptor::ideal_mhd();
  std::vector<double> ub0 = {1.0, 0.5, 0.0, 0.0, 2.5, 0.0, 0.0, 0.0};
  const MhdThetaUpsilon r0 = mhd_theta_upsilon(mhd, ub0);
  CHECK(r0.theta == 0.0);
  CHECK(r0.upsilon[1] == 0.0);
  CHECK(r0.upsilon[4] == 0.0);

  // v = (1,0,0), B = (2,0,0), rho = 1, p = 1: beta = 1/2, theta = 2.
  std::vector<double> prim = {1.0, 1.0, 0.0, 0.0, 1.0, 2.0, 0.0, 0.0};
  std::vector<double> u(8);
  conserved_from_primitive(mhd, prim, u);
  const MhdThetaUpsilon r = mhd_theta_upsilon(mhd, u);
  CHECK(r.theta == doctest::Approx(2.0).epsilon(1e-14));

  StateSampler sampler(2903);
  for (int trial = 0; trial < 500; ++trial) {
    const std::vector<double> us = sampler.conserved(mhd);
    const MhdThetaUpsilon rr = mhd_theta_upsilon(mhd, us);
    const EntropyQuantities q = entropy_quantities(mhd, us);
    double wu = 0.0;
    for (int c = 0; c < 8; ++c) wu += q.w[c] * rr.upsilon[c];
    CHECK(std::fabs(rr.theta - wu) <= 1e-12 * std::max(1.0, std::fabs(rr.theta)));
  }
}

TEST_CASE("primitive round trip") {
  const SystemDescriptor systems[] = {
      SystemDescriptor::euler1d(), SystemDescriptor::euler3d(),
      SystemDescriptor::shallow_water(), SystemDescriptor::ideal_mhd()};
  for (const auto& sys : systems) {
    StateSampler sampler(601 + static_cast<int>(sys.id));
    for (int trial = 0; trial < 200; ++trial) {
      const std::vector<double> u = sampler.conserved(sys);
      std::vector<double> prim(sys.p), back(sys.p);
      primitive_from_conserved(sys, u, prim);
      conserved_from_primitive(sys, prim, back);
      for (int c = 0; c < sys.p; ++c) {
        CHECK(std::fabs(back[c] - u[c]) <= 1e-13 * std::max(1.0, std::fabs(u[c])));
      }
    }
  }
}

TEST_CASE("admissibility errors carry the offending quantity") {
  const SystemDescriptor euler = SystemDescriptor::euler1d();
  std::vector<double> bad_rho = {-1.0, 0.0, 2.5};
  std::vector<double> f(3);
  CHECK_THROWS_AS(physical_flux(euler, bad_rho, 0, f), AdmissibilityError);
  std::vector<double> bad_p = {1.0, 10.0, 2.5}; // huge kinetic energy
  try {
    physical_flux(euler, bad_p, 0, f);
    CHECK(false);
  } catch (const AdmissibilityError& e) {
    CHECK(e.quantity() == "p");
  }
  const SystemDescriptor sw = SystemDescriptor::shallow_water();
  std::vector<double> bad_h = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(entropy_quantities(sw, bad_h), AdmissibilityError);
}
