#ifndef STDG_SOLVER_HPP
#define STDG_SOLVER_HPP

#include <span>
#include <vector>

#include "stdg/mesh.hpp"
#include "stdg/problems.hpp"
#include "stdg/sbp.hpp"
#include "stdg/two_point.hpp"

namespace stdg {

enum class TemporalCoupling { Upwind, EntropyConservative };
enum class SurfaceFlux { Eckep, EntropyStable };
enum class Parallelism { Serial, OpenMp };

struct SolverConfig {
  TemporalCoupling temporal_state = TemporalCoupling::Upwind;
  SurfaceFlux spatial_flux = SurfaceFlux::EntropyStable;
  double newton_tol = 1e-12;    // on the quadrature-weighted residual max-norm
  int newton_max_iter = 100;
  int max_line_search = 40;     // step halvings per Newton iteration
  Parallelism parallelism = Parallelism::Serial;
  int global_unknown_cap = 5000; // coupled entropy-conservative solves only
};

struct NewtonReport {
  int iterations = 0;
  int jacobian_builds = 0;
  double residual_norm = 0.0;
};

/// Nodal solution of one space-time slab, laid out
/// (sigma, element, node, component) with the component index fastest.
struct SlabSolution {
  int M = 0, N = 0, num_elements = 0, p = 0;
  double t_begin = 0.0, dt = 0.0;
  std::vector<double> values;

  int dof() const { return (M + 1) * num_elements * (N + 1) * p; }
  int index(int sigma, int k, int i, int c) const {
    return ((sigma * num_elements + k) * (N + 1) + i) * p + c;
  }
  std::span<const double> node(int sigma, int k, int i) const {
    return {values.data() + index(sigma, k, i, 0), static_cast<size_t>(p)};
  }
};

/// Residual assembly and implicit solution of the space-time discretization
/// on a window of consecutive slabs. The discrete equations carry the
/// quadrature weights J w_sigma w_i; they are not mass-inverted.
class SpaceTimeSolver {
public:
  SpaceTimeSolver(ProblemSpec prob, MeshConfig mesh, int temporal_degree,
                  int spatial_degree, SolverConfig cfg);

  const SbpOperator& time_rule() const { return trule_; }
  const SbpOperator& space_rule() const { return srule_; }
  const MeshConfig& mesh() const { return mesh_; }
  const ProblemSpec& problem() const { return prob_; }
  const SolverConfig& config() const { return cfg_; }

  int dof_per_slab() const { return dof_per_slab_; }
  int trace_size() const { return trace_size_; }

  /// Nodal interpolant of the initial data, laid out (element, node, comp).
  std::vector<double> initial_trace() const;

  /// Weighted residual of `count` slabs starting at global slab index
  /// `first`. `u_minus` is the incoming trace at the window's lower time
  /// face. Interior slab interfaces follow cfg.temporal_state.
  void residual(std::span<const double> u, std::span<const double> u_minus,
                int first, int count, std::span<double> r) const;

  /// Dense finite-difference Jacobian of the residual, built column-block by
  /// column-block with structural coloring. Row-major count*dof square.
  void jacobian(std::span<const double> u, std::span<const double> u_minus,
                int first, int count, std::vector<double>& jac) const;

  /// Damped Newton iteration on the window; `u` holds the initial guess and
  /// is overwritten with the solution. Throws NonConvergenceError.
  NewtonReport newton(std::span<double> u, std::span<const double> u_minus,
                      int first, int count) const;

  /// Solve one slab given the incoming trace (upwind coupling). The initial
  /// guess replicates the trace across the temporal nodes; if Newton fails
  /// from there, the slab is re-solved on recursively halved sub-slabs and
  /// their temporal interpolant seeds a final full-slab solve.
  SlabSolution solve_slab(std::span<const double> u_minus, int slab_index,
                          NewtonReport* report = nullptr) const;

  /// Copy the temporal level `sigma` of a slab into trace layout.
  void extract_level(std::span<const double> u_slab, int sigma,
                     std::span<double> trace) const;

  // Individual residual contributions, exposed for verification. Each adds
  // into `r` for the same single-slab layout as `u`.
  void temporal_volume(std::span<const double> u, std::span<double> r) const;
  void spatial_volume(std::span<const double> u, std::span<double> r) const;
  void temporal_surface(std::span<const double> u, std::span<const double> u_minus,
                        std::span<double> r) const;
  void spatial_surface(std::span<const double> u, std::span<double> r) const;
  void source_term(std::span<double> r, int slab_index) const;

  double node_x(int k, int i) const;
  double node_t(int slab, int sigma) const;

private:
  struct Window;
  void residual_window(const Window& w, std::span<double> r) const;
  SlabSolution solve_slab_impl(std::span<const double> u_minus, int slab_index,
                               NewtonReport* report, int depth) const;

  ProblemSpec prob_;
  MeshConfig mesh_;
  SolverConfig cfg_;
  SbpOperator trule_;
  SbpOperator srule_;
  int p_ = 3;
  int dof_per_slab_ = 0;
  int trace_size_ = 0;
};

/// Full space-time run: initial trace, every slab solution, per-slab Newton
/// reports, and the rules needed by the diagnostics.
struct RunResult {
  ProblemSpec prob;
  MeshConfig mesh;
  SolverConfig cfg;
  int M = 0, N = 0;
  SbpOperator time_rule;
  SbpOperator space_rule;
  std::vector<double> initial; // (element, node, component)
  std::vector<SlabSolution> slabs;
  std::vector<NewtonReport> reports;
};

/// March the problem through all slabs. Upwind coupling solves slab by slab;
/// entropy-conservative coupling solves all slabs as one Newton system
/// (warm-started from an upwind march) and is capped by
/// cfg.global_unknown_cap.
RunResult march(const ProblemSpec& prob, const MeshConfig& mesh, int temporal_degree,
                int spatial_degree, const SolverConfig& cfg);

} // namespace stdg

#endif
