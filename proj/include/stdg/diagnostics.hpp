#ifndef STDG_DIAGNOSTICS_HPP
#define STDG_DIAGNOSTICS_HPP

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stdg/solver.hpp"

namespace stdg {

/// Scalar functionals of one completed run. All sums use compensated
/// accumulation.
struct DiagnosticsRecord {
  double S_initial = 0.0;
  double S_final = 0.0;
  double delta_S = 0.0; // S_final - S_initial
  double xi_S = 0.0;    // delta_S + initial projection term
  double K_initial = 0.0;
  double K_final = 0.0;
  double theta_K = 0.0;
  double pressure_work_volume = 0.0;
  double pressure_work_surface = 0.0;
  double initial_projection_S = 0.0;
  double initial_projection_K = 0.0;
  std::vector<double> l2_errors; // per component, empty without exact solution
  std::vector<double> eoc;       // per component, empty outside ladder runs
};

/// Discrete total entropy sum_k <s(U), J>_N of one spatial trace laid out
/// (element, node, component).
double total_entropy(const SystemDescriptor& sys, const SbpOperator& space_rule,
                     double jacobian, std::span<const double> trace);

/// Discrete total kinetic energy of one trace (Euler systems).
double total_kinetic_energy(const SystemDescriptor& sys, const SbpOperator& space_rule,
                            double jacobian, std::span<const double> trace);

/// (t, S(t) - S(0)) at every slab boundary, t = 0 included.
std::vector<std::pair<double, double>> entropy_trace(const RunResult& run);

double delta_S(const RunResult& run);
double xi_S(const RunResult& run);
double theta_K(const RunResult& run);

/// Spatial discrete L2 errors per component at the final time against the
/// problem's exact solution, quadrated on a degree-2N oversampled LGL grid.
std::vector<double> l2_error(const RunResult& run);

/// Experimental orders of convergence between two error levels under mesh
/// refinement by `ratio`.
std::vector<double> eoc(std::span<const double> coarse, std::span<const double> fine,
                        double ratio);

/// All functionals of a run; L2 errors are filled when the problem carries
/// an exact solution.
DiagnosticsRecord diagnostics(const RunResult& run);

/// One CSV row per record; see the header for the column order.
std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const DiagnosticsRecord& rec);

} // namespace stdg

#endif
