#include "stdg/problems.hpp"

#include <cmath>
#include <numbers>

namespace stdg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ProblemSpec manufactured_euler(double gamma, double amplitude) {
  ProblemSpec prob;
  prob.sys = SystemDescriptor::euler1d(gamma);
  prob.exact = [amplitude](double x, double t, std::span<double> u) {
    const double r = 2.0 + amplitude * std::sin(kTwoPi * (x - t));
    u[0] = r;
    u[1] = r;
    u[2] = r * r;
  };
  prob.initial = [exact = prob.exact](double x, std::span<double> u) {
    exact(x, 0.0, u);
  };
  // The momentum and energy balances of the exact state reduce to dp/dx with
  // p = (gamma - 1)(r^2 - r/2); the advective parts cancel because v = 1 and
  // E is transported.
  prob.source = [gamma, amplitude](double x, double t, std::span<double> q) {
    const double arg = kTwoPi * (x - t);
    const double r = 2.0 + amplitude * std::sin(arg);
    const double dpdx =
        (gamma - 1.0) * (2.0 * r - 0.5) * amplitude * kTwoPi * std::cos(arg);
    q[0] = 0.0;
    q[1] = dpdx;
    q[2] = dpdx;
  };
  return prob;
}

ProblemSpec shock_euler(double gamma) {
  ProblemSpec prob;
  prob.sys = SystemDescriptor::euler1d(gamma);
  prob.initial = [gamma](double x, std::span<double> u) {
    const double rho = (x <= 0.3) ? 1.0 : 1.125;
    const double p = (x <= 0.3) ? 1.0 : 1.1;
    u[0] = rho;
    u[1] = 0.0;
    u[2] = p / (gamma - 1.0);
  };
  return prob;
}

ProblemSpec density_wave_euler(double gamma) {
  ProblemSpec prob;
  prob.sys = SystemDescriptor::euler1d(gamma);
  prob.exact = [gamma](double x, double t, std::span<double> u) {
    const double rho = 2.0 + std::sin(kTwoPi * (x - t));
    u[0] = rho;
    u[1] = rho;
    u[2] = 1.0 / (gamma - 1.0) + 0.5 * rho;
  };
  prob.initial = [exact = prob.exact](double x, std::span<double> u) {
    exact(x, 0.0, u);
  };
  return prob;
}

} // namespace stdg
