#ifndef STDG_PROBLEMS_HPP
#define STDG_PROBLEMS_HPP

#include <functional>
#include <span>

#include "stdg/systems.hpp"

namespace stdg {

/// One canned initial value problem on a periodic 1D domain.
struct ProblemSpec {
  SystemDescriptor sys;
  std::function<void(double x, std::span<double> u)> initial;
  std::function<void(double x, double t, std::span<double> u)> exact;  // may be null
  std::function<void(double x, double t, std::span<double> q)> source; // may be null
  double x_lo = 0.0;
  double x_hi = 1.0;
  double t_final = 1.0;

  bool has_exact() const { return static_cast<bool>(exact); }
  bool has_source() const { return static_cast<bool>(source); }
};

/// Smooth manufactured solution rho = rho v = 2 + a sin(2 pi (x - t)),
/// E = rho^2, with the matching momentum/energy source term.
ProblemSpec manufactured_euler(double gamma = 1.4, double amplitude = 0.1);

/// Discontinuous data: rho and p jump at x = 0.3, v = 0. No exact solution.
ProblemSpec shock_euler(double gamma = 1.4);

/// Advected density wave rho = 2 + sin(2 pi (x - t)), v = 1, p = 1.
ProblemSpec density_wave_euler(double gamma = 1.4);

} // namespace stdg

#endif
