#ifndef STDG_TESTS_SUPPORT_HPP
#define STDG_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "stdg/systems.hpp"

namespace stdg::testing {

// Fuzz ranges for random admissible states: densities/pressures/heights in
// [0.1, 10], velocities in [-5, 5], magnetic fields in [-3, 3].
class StateSampler {
public:
  explicit StateSampler(uint64_t seed) : rng_(seed) {}

  std::vector<double> conserved(const SystemDescriptor& sys) {
    std::vector<double> prim;
    switch (sys.id) {
      case SystemId::Euler1D:
        prim = {positive(), velocity(), positive()};
        break;
      case SystemId::Euler3D:
        prim = {positive(), velocity(), velocity(), velocity(), positive()};
        break;
      case SystemId::ShallowWater:
        prim = {positive(), velocity(), velocity()};
        break;
      case SystemId::IdealMhd:
        prim = {positive(), velocity(), velocity(), velocity(), positive(),
                field(),    field(),    field()};
        break;
    }
    std::vector<double> u(sys.p);
    conserved_from_primitive(sys, prim, u);
    return u;
  }

  double positive() { return pos_(rng_); }
  double velocity() { return vel_(rng_); }
  double field() { return mag_(rng_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> pos_{0.1, 10.0};
  std::uniform_real_distribution<double> vel_{-5.0, 5.0};
  std::uniform_real_distribution<double> mag_{-3.0, 3.0};
};

} // namespace stdg::testing

#endif
