#include "stdg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <string>

#include "stdg/dense.hpp"
#include "stdg/errors.hpp"
#include "stdg/spacetime_kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stdg {

namespace {

double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

} // namespace

struct SpaceTimeSolver::Window {
  std::span<const double> u;       // count * dof_per_slab
  std::span<const double> u_minus; // trace below the first slab
  int first = 0;
  int count = 1;
};

SpaceTimeSolver::SpaceTimeSolver(ProblemSpec prob, MeshConfig mesh,
                                 int temporal_degree, int spatial_degree,
                                 SolverConfig cfg)
    : prob_(std::move(prob)), mesh_(mesh), cfg_(cfg),
      trule_(lgl_rule(temporal_degree)), srule_(lgl_rule(spatial_degree)) {
  if (prob_.sys.id != SystemId::Euler1D) {
    throw ConfigError("SpaceTimeSolver: time marching supports Euler1D only");
  }
  if (mesh_.num_elements < 1 || mesh_.num_slabs < 1) {
    throw ConfigError("SpaceTimeSolver: mesh must have at least one element and slab");
  }
  p_ = prob_.sys.p;
  trace_size_ = mesh_.num_elements * (spatial_degree + 1) * p_;
  dof_per_slab_ = (temporal_degree + 1) * trace_size_;
}

double SpaceTimeSolver::node_x(int k, int i) const {
  return mesh_.x_lo + k * mesh_.dx() + 0.5 * mesh_.dx() * (srule_.node(i) + 1.0);
}

double SpaceTimeSolver::node_t(int slab, int sigma) const {
  return slab * mesh_.dt() + 0.5 * mesh_.dt() * (trule_.node(sigma) + 1.0);
}

std::vector<double> SpaceTimeSolver::initial_trace() const {
  const int N = srule_.degree();
  std::vector<double> trace(trace_size_);
  for (int k = 0; k < mesh_.num_elements; ++k) {
    for (int i = 0; i <= N; ++i) {
      std::span<double> u(trace.data() + (k * (N + 1) + i) * p_,
                          static_cast<size_t>(p_));
      prob_.initial(node_x(k, i), u);
      require_admissible(prob_.sys, u, "initial data");
    }
  }
  return trace;
}

void SpaceTimeSolver::extract_level(std::span<const double> u_slab, int sigma,
                                    std::span<double> trace) const {
  std::memcpy(trace.data(), u_slab.data() + sigma * trace_size_,
              trace_size_ * sizeof(double));
}

void SpaceTimeSolver::residual_window(const Window& w, std::span<double> r) const {
  const int M = trule_.degree();
  const int N = srule_.degree();
  const int KS = mesh_.num_elements;
  const int p = p_;
  const int nodes_per_level = KS * (N + 1) * p;
  const double jac = mesh_.jacobian();
  const double half_dt = 0.5 * mesh_.dt();
  const SystemDescriptor sys = prob_.sys;
  const bool parallel = cfg_.parallelism == Parallelism::OpenMp;

  std::fill(r.begin(), r.end(), 0.0);

  // Reject inadmissible nodal states up front with their location.
  {
    std::optional<AdmissibilityError> failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int k = 0; k < KS; ++k) {
      for (int s = 0; s < w.count; ++s) {
        for (int sig = 0; sig <= M; ++sig) {
          for (int i = 0; i <= N; ++i) {
            const double* un = w.u.data() + s * dof_per_slab_ +
                               sig * nodes_per_level + (k * (N + 1) + i) * p;
            try {
              require_admissible(sys, {un, static_cast<size_t>(p)});
            } catch (const AdmissibilityError& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
              if (!failure) {
                failure.emplace(e.quantity(), e.value(),
                                "slab " + std::to_string(w.first + s) + ", sigma " +
                                    std::to_string(sig) + ", element " +
                                    std::to_string(k) + ", node " + std::to_string(i));
              }
            }
          }
        }
      }
    }
    if (failure) throw *failure;
  }

  // Interface fluxes for every slab: interface k couples element k's right
  // face to element (k+1) % KS's left face.
  std::vector<double> iface(static_cast<size_t>(w.count) * KS * (M + 1) * p);
  const DissipationSpec dis{cfg_.spatial_flux == SurfaceFlux::EntropyStable
                                ? DissipationKind::EntropyScaledMatrix
                                : DissipationKind::None};
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
#endif
  for (int s = 0; s < w.count; ++s) {
    for (int k = 0; k < KS; ++k) {
      const double* us = w.u.data() + s * dof_per_slab_;
      const int kp = (k + 1) % KS;
      for (int sig = 0; sig <= M; ++sig) {
        const double* ul = us + sig * nodes_per_level + (k * (N + 1) + N) * p;
        const double* ur = us + sig * nodes_per_level + (kp * (N + 1) + 0) * p;
        double* f = iface.data() + (((s * KS + k) * (M + 1)) + sig) * p;
        flux_es(sys, {ul, static_cast<size_t>(p)}, {ur, static_cast<size_t>(p)}, 0,
                dis, {f, static_cast<size_t>(p)});
      }
    }
  }

  // Temporal interface states between consecutive slabs of the window.
  std::vector<double> tface;
  if (w.count > 1) {
    tface.resize(static_cast<size_t>(w.count - 1) * trace_size_);
    const bool ec = cfg_.temporal_state == TemporalCoupling::EntropyConservative;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int s = 0; s < w.count - 1; ++s) {
      const double* lower_end =
          w.u.data() + s * dof_per_slab_ + M * nodes_per_level;
      const double* upper_begin = w.u.data() + (s + 1) * dof_per_slab_;
      double* out = tface.data() + s * trace_size_;
      for (int n = 0; n < KS * (N + 1); ++n) {
        if (ec) {
          temporal_state_ec(sys, {lower_end + n * p, static_cast<size_t>(p)},
                            {upper_begin + n * p, static_cast<size_t>(p)},
                            {out + n * p, static_cast<size_t>(p)});
        } else {
          temporal_state_upwind({lower_end + n * p, static_cast<size_t>(p)},
                                {out + n * p, static_cast<size_t>(p)});
        }
      }
    }
  }

  const auto ec_state = [&sys](const double* a, const double* b, double* out) {
    temporal_state_ec(sys, {a, 3}, {b, 3}, {out, 3});
  };
  const auto ec_flux = [&sys](const double* a, const double* b, double* out) {
    flux_eckep_euler(sys, {a, 3}, {b, 3}, 0, {out, 3});
  };
  const auto point_flux = [&sys](const double* a, double* out) {
    physical_flux(sys, {a, 3}, 0, {out, 3});
  };

#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) if (parallel)
#endif
  for (int s = 0; s < w.count; ++s) {
    for (int k = 0; k < KS; ++k) {
      const double* us = w.u.data() + s * dof_per_slab_;
      double* rs = r.data() + s * dof_per_slab_;
      const double* uelem = us + (k * (N + 1)) * p;
      double* relem = rs + (k * (N + 1)) * p;

      kernels::add_temporal_volume(trule_, srule_, jac, p, uelem, nodes_per_level,
                                   ec_state, relem, nodes_per_level);
      kernels::add_spatial_volume(trule_, srule_, half_dt, p, uelem, nodes_per_level,
                                  ec_flux, relem, nodes_per_level);

      const double* star_lo = (s == 0)
                                  ? w.u_minus.data() + (k * (N + 1)) * p
                                  : tface.data() + (s - 1) * trace_size_ +
                                        (k * (N + 1)) * p;
      const double* star_hi = nullptr;
      if (s + 1 < w.count &&
          cfg_.temporal_state == TemporalCoupling::EntropyConservative) {
        star_hi = tface.data() + s * trace_size_ + (k * (N + 1)) * p;
      }
      kernels::add_temporal_surface(trule_, srule_, jac, p, uelem, nodes_per_level,
                                    star_lo, star_hi, relem, nodes_per_level);

      const int km = (k + KS - 1) % KS;
      kernels::add_spatial_surface(
          trule_, srule_, half_dt, p, uelem, nodes_per_level,
          iface.data() + ((s * KS + km) * (M + 1)) * p,
          iface.data() + ((s * KS + k) * (M + 1)) * p, point_flux, relem,
          nodes_per_level);

      if (prob_.has_source()) {
        double q[8];
        for (int sig = 0; sig <= M; ++sig) {
          const double t = node_t(w.first + s, sig);
          for (int i = 0; i <= N; ++i) {
            prob_.source(node_x(k, i), t, {q, static_cast<size_t>(p)});
            const double c =
                trule_.weight(sig) * srule_.weight(i) * jac * half_dt;
            double* rn = relem + sig * nodes_per_level + i * p;
            for (int cc = 0; cc < p; ++cc) rn[cc] -= c * q[cc];
          }
        }
      }
    }
  }
}

void SpaceTimeSolver::residual(std::span<const double> u,
                               std::span<const double> u_minus, int first, int count,
                               std::span<double> r) const {
  residual_window({u, u_minus, first, count}, r);
}

void SpaceTimeSolver::temporal_volume(std::span<const double> u,
                                      std::span<double> r) const {
  const int N = srule_.degree();
  const int stride = mesh_.num_elements * (N + 1) * p_;
  std::fill(r.begin(), r.end(), 0.0);
  const SystemDescriptor sys = prob_.sys;
  const auto st = [&sys](const double* a, const double* b, double* out) {
    temporal_state_ec(sys, {a, 3}, {b, 3}, {out, 3});
  };
  for (int k = 0; k < mesh_.num_elements; ++k) {
    kernels::add_temporal_volume(trule_, srule_, mesh_.jacobian(), p_,
                                 u.data() + k * (N + 1) * p_, stride, st,
                                 r.data() + k * (N + 1) * p_, stride);
  }
}

void SpaceTimeSolver::spatial_volume(std::span<const double> u,
                                     std::span<double> r) const {
  const int N = srule_.degree();
  const int stride = mesh_.num_elements * (N + 1) * p_;
  std::fill(r.begin(), r.end(), 0.0);
  const SystemDescriptor sys = prob_.sys;
  const auto fl = [&sys](const double* a, const double* b, double* out) {
    flux_eckep_euler(sys, {a, 3}, {b, 3}, 0, {out, 3});
  };
  for (int k = 0; k < mesh_.num_elements; ++k) {
    kernels::add_spatial_volume(trule_, srule_, 0.5 * mesh_.dt(), p_,
                                u.data() + k * (N + 1) * p_, stride, fl,
                                r.data() + k * (N + 1) * p_, stride);
  }
}

void SpaceTimeSolver::temporal_surface(std::span<const double> u,
                                       std::span<const double> u_minus,
                                       std::span<double> r) const {
  const int N = srule_.degree();
  const int stride = mesh_.num_elements * (N + 1) * p_;
  std::fill(r.begin(), r.end(), 0.0);
  for (int k = 0; k < mesh_.num_elements; ++k) {
    kernels::add_temporal_surface(trule_, srule_, mesh_.jacobian(), p_,
                                  u.data() + k * (N + 1) * p_, stride,
                                  u_minus.data() + k * (N + 1) * p_, nullptr,
                                  r.data() + k * (N + 1) * p_, stride);
  }
}

void SpaceTimeSolver::spatial_surface(std::span<const double> u,
                                      std::span<double> r) const {
  const int M = trule_.degree();
  const int N = srule_.degree();
  const int KS = mesh_.num_elements;
  const int stride = KS * (N + 1) * p_;
  std::fill(r.begin(), r.end(), 0.0);
  const SystemDescriptor sys = prob_.sys;
  const DissipationSpec dis{cfg_.spatial_flux == SurfaceFlux::EntropyStable
                                ? DissipationKind::EntropyScaledMatrix
                                : DissipationKind::None};
  std::vector<double> iface(static_cast<size_t>(KS) * (M + 1) * p_);
  for (int k = 0; k < KS; ++k) {
    const int kp = (k + 1) % KS;
    for (int sig = 0; sig <= M; ++sig) {
      const double* ul = u.data() + sig * stride + (k * (N + 1) + N) * p_;
      const double* ur = u.data() + sig * stride + (kp * (N + 1)) * p_;
      flux_es(sys, {ul, static_cast<size_t>(p_)}, {ur, static_cast<size_t>(p_)}, 0,
              dis, {iface.data() + (k * (M + 1) + sig) * p_,
                    static_cast<size_t>(p_)});
    }
  }
  const auto pf = [&sys](const double* a, double* out) {
    physical_flux(sys, {a, 3}, 0, {out, 3});
  };
  for (int k = 0; k < KS; ++k) {
    const int km = (k + KS - 1) % KS;
    kernels::add_spatial_surface(trule_, srule_, 0.5 * mesh_.dt(), p_,
                                 u.data() + k * (N + 1) * p_, stride,
                                 iface.data() + km * (M + 1) * p_,
                                 iface.data() + k * (M + 1) * p_, pf,
                                 r.data() + k * (N + 1) * p_, stride);
  }
}

void SpaceTimeSolver::source_term(std::span<double> r, int slab_index) const {
  const int M = trule_.degree();
  const int N = srule_.degree();
  const int stride = mesh_.num_elements * (N + 1) * p_;
  std::fill(r.begin(), r.end(), 0.0);
  if (!prob_.has_source()) return;
  double q[8];
  for (int k = 0; k < mesh_.num_elements; ++k) {
    for (int sig = 0; sig <= M; ++sig) {
      for (int i = 0; i <= N; ++i) {
        prob_.source(node_x(k, i), node_t(slab_index, sig),
                     {q, static_cast<size_t>(p_)});
        const double c = trule_.weight(sig) * srule_.weight(i) * mesh_.jacobian() *
                         0.5 * mesh_.dt();
        double* rn = r.data() + sig * stride + (k * (N + 1) + i) * p_;
        for (int cc = 0; cc < p_; ++cc) rn[cc] -= c * q[cc];
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Finite-difference Jacobian with structural coloring. A column block is all
// unknowns of one element in one slab; it can only influence residual rows of
// the same element, its spatial neighbors, and the same element in adjacent
// slabs.

namespace {

struct BlockGraph {
  std::vector<std::vector<int>> rowset; // per block, sorted block indices
  std::vector<int> color;
  int num_colors = 0;
};

BlockGraph build_block_graph(int count, int ks) {
  const int nb = count * ks;
  BlockGraph g;
  g.rowset.resize(nb);
  auto id = [ks](int s, int k) { return s * ks + k; };
  for (int s = 0; s < count; ++s) {
    for (int k = 0; k < ks; ++k) {
      auto& rs = g.rowset[id(s, k)];
      rs.push_back(id(s, k));
      rs.push_back(id(s, (k + 1) % ks));
      rs.push_back(id(s, (k + ks - 1) % ks));
      if (s > 0) rs.push_back(id(s - 1, k));
      if (s + 1 < count) rs.push_back(id(s + 1, k));
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    }
  }
  g.color.assign(nb, -1);
  for (int b = 0; b < nb; ++b) {
    std::vector<bool> used(g.num_colors + 1, false);
    for (int o = 0; o < nb; ++o) {
      if (o == b || g.color[o] < 0) continue;
      bool conflict = false;
      for (int rb : g.rowset[b]) {
        if (std::binary_search(g.rowset[o].begin(), g.rowset[o].end(), rb)) {
          conflict = true;
          break;
        }
      }
      if (conflict && g.color[o] < static_cast<int>(used.size())) {
        used[g.color[o]] = true;
      }
    }
    int c = 0;
    while (c < static_cast<int>(used.size()) && used[c]) ++c;
    g.color[b] = c;
    g.num_colors = std::max(g.num_colors, c + 1);
  }
  return g;
}

} // namespace

void SpaceTimeSolver::jacobian(std::span<const double> u,
                               std::span<const double> u_minus, int first, int count,
                               std::vector<double>& jac) const {
  const int n = count * dof_per_slab_;
  const int N = srule_.degree();
  const int M = trule_.degree();
  const int KS = mesh_.num_elements;
  const int block_dof = (M + 1) * (N + 1) * p_;
  const int nodes_per_level = KS * (N + 1) * p_;

  jac.assign(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> r0(n);
  residual(u, u_minus, first, count, r0);

  const BlockGraph graph = build_block_graph(count, KS);
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  // Global column index of intra-block dof j of block (s, k).
  auto col_index = [&](int block, int j) {
    const int s = block / KS;
    const int k = block % KS;
    const int sig = j / ((N + 1) * p_);
    const int rest = j % ((N + 1) * p_);
    return s * dof_per_slab_ + sig * nodes_per_level + k * (N + 1) * p_ + rest;
  };

  const bool parallel = cfg_.parallelism == Parallelism::OpenMp;
  struct Scratch {
    std::vector<double> up, um, rp, rm, steps;
  };
  std::vector<Scratch> scratch(
#ifdef _OPENMP
      parallel ? omp_get_max_threads() : 1
#else
      1
#endif
  );
  for (int color = 0; color < graph.num_colors; ++color) {
    std::vector<int> members;
    for (int b = 0; b < count * KS; ++b) {
      if (graph.color[b] == color) members.push_back(b);
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int j = 0; j < block_dof; ++j) {
      Scratch& s_local =
#ifdef _OPENMP
          scratch[parallel ? omp_get_thread_num() : 0];
#else
          scratch[0];
#endif
      std::vector<double>& up = s_local.up;
      std::vector<double>& um = s_local.um;
      std::vector<double>& rp = s_local.rp;
      std::vector<double>& rm = s_local.rm;
      std::vector<double>& steps = s_local.steps;
      up.assign(u.begin(), u.end());
      um.assign(u.begin(), u.end());
      rp.resize(n);
      rm.resize(n);
      steps.assign(members.size(), 0.0);
      for (size_t mi = 0; mi < members.size(); ++mi) {
        const int col = col_index(members[mi], j);
        steps[mi] = sqrt_eps * (1.0 + std::fabs(u[col]));
        up[col] += steps[mi];
        um[col] -= steps[mi];
      }
      // central differences; fall back to a one-sided probe when a
      // perturbation crosses the positivity floor
      bool ok_p = true, ok_m = true;
      try {
        residual(up, u_minus, first, count, rp);
      } catch (const AdmissibilityError&) {
        ok_p = false;
      }
      try {
        residual(um, u_minus, first, count, rm);
      } catch (const AdmissibilityError&) {
        ok_m = false;
        if (!ok_p) throw;
      }
      const double* hi = ok_p ? rp.data() : r0.data();
      const double* lo = ok_m ? rm.data() : r0.data();
      const double denom_scale = (ok_p && ok_m) ? 2.0 : 1.0;
      for (size_t mi = 0; mi < members.size(); ++mi) {
        const int col = col_index(members[mi], j);
        const double inv_h = 1.0 / (denom_scale * steps[mi]);
        for (int rb : graph.rowset[members[mi]]) {
          const int s = rb / KS;
          const int k = rb % KS;
          for (int sig = 0; sig <= M; ++sig) {
            const int row0 =
                s * dof_per_slab_ + sig * nodes_per_level + k * (N + 1) * p_;
            for (int t = 0; t < (N + 1) * p_; ++t) {
              const int row = row0 + t;
              jac[static_cast<size_t>(row) * n + col] = (hi[row] - lo[row]) * inv_h;
            }
          }
        }
      }
    }
  }
}

NewtonReport SpaceTimeSolver::newton(std::span<double> u,
                                     std::span<const double> u_minus, int first,
                                     int count) const {
  const int n = count * dof_per_slab_;
  NewtonReport rep;
  std::vector<double> r(n), jac, step(n), trial(n), rt(n);
  LuFactors lu;

  residual(u, u_minus, first, count, r);
  double norm = max_norm(r);
  bool fresh_jacobian = false;
  bool converged = norm <= cfg_.newton_tol;
  int polish_left = 5; // extra steps past the tolerance to reach the roundoff floor

  while (rep.iterations < cfg_.newton_max_iter && norm > 0.0 &&
         !(converged && polish_left <= 0)) {
    if (!lu.valid()) {
      jacobian(u, u_minus, first, count, jac);
      ++rep.jacobian_builds;
      if (!lu.factor(std::move(jac), n)) {
        throw NonConvergenceError(rep.iterations, norm, "singular Jacobian");
      }
      fresh_jacobian = true;
    }

    for (int i = 0; i < n; ++i) step[i] = -r[i];
    lu.solve(step);

    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < cfg_.max_line_search && !accepted; ++ls) {
      for (int i = 0; i < n; ++i) trial[i] = u[i] + alpha * step[i];
      double nt = std::numeric_limits<double>::infinity();
      try {
        residual(trial, u_minus, first, count, rt);
        nt = max_norm(rt);
      } catch (const AdmissibilityError&) {
      }
      if (nt < norm) {
        std::copy(trial.begin(), trial.end(), u.begin());
        std::swap(r, rt);
        const double contraction = nt / norm;
        norm = nt;
        ++rep.iterations;
        accepted = true;
        if (converged) {
          if (contraction > 0.67) polish_left = 0;
          else --polish_left;
        } else if (norm <= cfg_.newton_tol) {
          converged = true;
        } else if (contraction > 0.2 || alpha < 1.0) {
          lu = LuFactors{}; // slow contraction: rebuild next round
        }
        fresh_jacobian = false;
      } else {
        alpha *= 0.5;
      }
    }

    if (!accepted) {
      if (converged) break; // at the roundoff floor
      if (!fresh_jacobian) {
        lu = LuFactors{}; // retry with a fresh Jacobian
        continue;
      }
      throw NonConvergenceError(rep.iterations, norm, "line search stalled");
    }
  }

  if (!converged) {
    throw NonConvergenceError(rep.iterations, norm);
  }
  rep.residual_norm = norm;
  return rep;
}

SlabSolution SpaceTimeSolver::solve_slab(std::span<const double> u_minus,
                                         int slab_index, NewtonReport* report) const {
  return solve_slab_impl(u_minus, slab_index, report, 0);
}

SlabSolution SpaceTimeSolver::solve_slab_impl(std::span<const double> u_minus,
                                              int slab_index, NewtonReport* report,
                                              int depth) const {
  const int M = trule_.degree();
  SlabSolution slab;
  slab.M = M;
  slab.N = srule_.degree();
  slab.num_elements = mesh_.num_elements;
  slab.p = p_;
  slab.t_begin = slab_index * mesh_.dt();
  slab.dt = mesh_.dt();
  slab.values.resize(dof_per_slab_);
  for (int sig = 0; sig <= M; ++sig) {
    std::memcpy(slab.values.data() + sig * trace_size_, u_minus.data(),
                trace_size_ * sizeof(double));
  }
  try {
    const NewtonReport rep = newton(slab.values, u_minus, slab_index, 1);
    if (report) *report = rep;
    return slab;
  } catch (const NonConvergenceError& e) {
    if (depth >= 3) {
      throw NonConvergenceError(e.iterations(), e.residual_norm(),
                                "slab " + std::to_string(slab_index));
    }
  }

  // Continuation: march the interval on two half slabs, interpolate their
  // trajectory onto this slab's temporal nodes, and retry.
  MeshConfig half = mesh_;
  half.num_slabs *= 2;
  SpaceTimeSolver sub(prob_, half, M, srule_.degree(), cfg_);
  const SlabSolution lo = sub.solve_slab_impl(u_minus, 2 * slab_index, nullptr,
                                              depth + 1);
  std::vector<double> mid(trace_size_);
  sub.extract_level(lo.values, M, mid);
  const SlabSolution hi = sub.solve_slab_impl(mid, 2 * slab_index + 1, nullptr,
                                              depth + 1);

  const double t0 = slab.t_begin;
  const double tm = t0 + 0.5 * slab.dt;
  std::vector<double> basis(M + 1);
  for (int sig = 0; sig <= M; ++sig) {
    const double t = node_t(slab_index, sig);
    const SlabSolution& part = (t <= tm) ? lo : hi;
    const double part_begin = (t <= tm) ? t0 : tm;
    const double tau = 4.0 * (t - part_begin) / slab.dt - 1.0;
    lagrange_basis(trule_, tau, basis);
    double* level = slab.values.data() + sig * trace_size_;
    std::fill(level, level + trace_size_, 0.0);
    for (int the = 0; the <= M; ++the) {
      const double* src = part.values.data() + the * trace_size_;
      for (int t2 = 0; t2 < trace_size_; ++t2) level[t2] += basis[the] * src[t2];
    }
  }
  try {
    const NewtonReport rep = newton(slab.values, u_minus, slab_index, 1);
    if (report) *report = rep;
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(e.iterations(), e.residual_norm(),
                              "slab " + std::to_string(slab_index));
  }
  return slab;
}

RunResult march(const ProblemSpec& prob, const MeshConfig& mesh, int temporal_degree,
                int spatial_degree, const SolverConfig& cfg) {
  SpaceTimeSolver solver(prob, mesh, temporal_degree, spatial_degree, cfg);
  RunResult run;
  run.prob = prob;
  run.mesh = mesh;
  run.cfg = cfg;
  run.M = temporal_degree;
  run.N = spatial_degree;
  run.time_rule = solver.time_rule();
  run.space_rule = solver.space_rule();
  run.initial = solver.initial_trace();

  const int KT = mesh.num_slabs;
  if (cfg.temporal_state == TemporalCoupling::Upwind) {
    std::vector<double> trace = run.initial;
    for (int n = 0; n < KT; ++n) {
      NewtonReport rep;
      run.slabs.push_back(solver.solve_slab(trace, n, &rep));
      run.reports.push_back(rep);
      solver.extract_level(run.slabs.back().values, temporal_degree, trace);
    }
    return run;
  }

  // Entropy-conservative interface coupling: one Newton system over all
  // slabs, warm-started from the upwind march.
  const long total = static_cast<long>(KT) * solver.dof_per_slab();
  if (total > cfg.global_unknown_cap) {
    throw ConfigError("coupled entropy-conservative solve needs " +
                      std::to_string(total) + " unknowns, cap is " +
                      std::to_string(cfg.global_unknown_cap));
  }

  std::vector<double> u_all(total);
  bool warm = true;
  try {
    SolverConfig upwind_cfg = cfg;
    upwind_cfg.temporal_state = TemporalCoupling::Upwind;
    SpaceTimeSolver pre(prob, mesh, temporal_degree, spatial_degree, upwind_cfg);
    std::vector<double> trace = run.initial;
    for (int n = 0; n < KT; ++n) {
      const SlabSolution s = pre.solve_slab(trace, n);
      std::memcpy(u_all.data() + static_cast<size_t>(n) * pre.dof_per_slab(),
                  s.values.data(), s.values.size() * sizeof(double));
      pre.extract_level(s.values, temporal_degree, trace);
    }
  } catch (const NonConvergenceError&) {
    warm = false;
  }
  if (!warm) {
    for (int n = 0; n < KT; ++n) {
      for (int sig = 0; sig <= temporal_degree; ++sig) {
        std::memcpy(u_all.data() + static_cast<size_t>(n) * solver.dof_per_slab() +
                        sig * solver.trace_size(),
                    run.initial.data(), run.initial.size() * sizeof(double));
      }
    }
  }

  const NewtonReport rep = solver.newton(u_all, run.initial, 0, KT);
  for (int n = 0; n < KT; ++n) {
    SlabSolution slab;
    slab.M = temporal_degree;
    slab.N = spatial_degree;
    slab.num_elements = mesh.num_elements;
    slab.p = prob.sys.p;
    slab.t_begin = n * mesh.dt();
    slab.dt = mesh.dt();
    slab.values.assign(
        u_all.begin() + static_cast<size_t>(n) * solver.dof_per_slab(),
        u_all.begin() + static_cast<size_t>(n + 1) * solver.dof_per_slab());
    run.slabs.push_back(std::move(slab));
    run.reports.push_back(rep);
  }
  return run;
}

} // namespace stdg
