#include "stdg/diagnostics.hpp"

#include <cmath>
#include <cstdio>

#include "stdg/dense.hpp"
#include "stdg/errors.hpp"

namespace stdg {

namespace {

std::span<const double> trace_node(std::span<const double> trace, int n_nodes, int p,
                                   int node) {
  (void)n_nodes;
  return {trace.data() + node * p, static_cast<size_t>(p)};
}

double format_guard(double x) { return x == 0.0 ? 0.0 : x; } // normalize -0

} // namespace

double total_entropy(const SystemDescriptor& sys, const SbpOperator& space_rule,
                     double jacobian, std::span<const double> trace) {
  const int n = space_rule.num_nodes();
  const int p = sys.p;
  const int elems = static_cast<int>(trace.size()) / (n * p);
  KahanSum sum;
  for (int k = 0; k < elems; ++k) {
    for (int i = 0; i < n; ++i) {
      const auto u = trace_node(trace, n, p, k * n + i);
      sum.add(space_rule.weight(i) * jacobian * entropy_quantities(sys, u).s);
    }
  }
  return sum.value();
}

double total_kinetic_energy(const SystemDescriptor& sys, const SbpOperator& space_rule,
                            double jacobian, std::span<const double> trace) {
  const int n = space_rule.num_nodes();
  const int p = sys.p;
  const int elems = static_cast<int>(trace.size()) / (n * p);
  KahanSum sum;
  for (int k = 0; k < elems; ++k) {
    for (int i = 0; i < n; ++i) {
      const auto u = trace_node(trace, n, p, k * n + i);
      sum.add(space_rule.weight(i) * jacobian * kinetic_quantities(sys, u).kappa);
    }
  }
  return sum.value();
}

std::vector<std::pair<double, double>> entropy_trace(const RunResult& run) {
  std::vector<std::pair<double, double>> out;
  const double s0 = total_entropy(run.prob.sys, run.space_rule, run.mesh.jacobian(),
                                  run.initial);
  out.emplace_back(0.0, 0.0);
  const int N = run.N;
  const int p = run.prob.sys.p;
  std::vector<double> trace(run.mesh.num_elements * (N + 1) * p);
  for (size_t n = 0; n < run.slabs.size(); ++n) {
    const SlabSolution& slab = run.slabs[n];
    std::copy(slab.values.end() - trace.size(), slab.values.end(), trace.begin());
    const double s = total_entropy(run.prob.sys, run.space_rule, run.mesh.jacobian(),
                                   trace);
    out.emplace_back(slab.t_begin + slab.dt, s - s0);
  }
  return out;
}

double delta_S(const RunResult& run) {
  const double s0 = total_entropy(run.prob.sys, run.space_rule, run.mesh.jacobian(),
                                  run.initial);
  const SlabSolution& last = run.slabs.back();
  std::span<const double> final_trace{
      last.values.data() + last.dof() - static_cast<int>(run.initial.size()),
      run.initial.size()};
  return total_entropy(run.prob.sys, run.space_rule, run.mesh.jacobian(),
                       final_trace) -
         s0;
}

namespace {

// sum_k < [[phi]] - [[W]]^T u0, J >_N at tau = -1, jumping from the initial
// data to the first slab's lowest temporal level.
double initial_projection_entropy(const RunResult& run) {
  const SystemDescriptor& sys = run.prob.sys;
  const int N = run.N;
  const int p = sys.p;
  const SlabSolution& first = run.slabs.front();
  KahanSum sum;
  for (int k = 0; k < run.mesh.num_elements; ++k) {
    for (int i = 0; i <= N; ++i) {
      std::span<const double> u0{run.initial.data() + (k * (N + 1) + i) * p,
                                 static_cast<size_t>(p)};
      const auto inner = first.node(0, k, i);
      const EntropyQuantities q0 = entropy_quantities(sys, u0);
      const EntropyQuantities qi = entropy_quantities(sys, inner);
      double wjump_dot_u0 = 0.0;
      for (int c = 0; c < p; ++c) wjump_dot_u0 += (qi.w[c] - q0.w[c]) * u0[c];
      sum.add(run.space_rule.weight(i) * run.mesh.jacobian() *
              ((qi.phi - q0.phi) - wjump_dot_u0));
    }
  }
  return sum.value();
}

double initial_projection_kinetic(const RunResult& run) {
  const SystemDescriptor& sys = run.prob.sys;
  const int N = run.N;
  const int p = sys.p;
  const SlabSolution& first = run.slabs.front();
  KahanSum sum;
  for (int k = 0; k < run.mesh.num_elements; ++k) {
    for (int i = 0; i <= N; ++i) {
      std::span<const double> u0{run.initial.data() + (k * (N + 1) + i) * p,
                                 static_cast<size_t>(p)};
      const auto inner = first.node(0, k, i);
      const KineticQuantities k0 = kinetic_quantities(sys, u0);
      const KineticQuantities ki = kinetic_quantities(sys, inner);
      double vjump_dot_u0 = 0.0;
      for (int c = 0; c < p; ++c) vjump_dot_u0 += (ki.v[c] - k0.v[c]) * u0[c];
      sum.add(run.space_rule.weight(i) * run.mesh.jacobian() * vjump_dot_u0);
    }
  }
  return sum.value();
}

// Discrete pressure work < d_xi I^N(v), p >_{N x M} summed over all slabs,
// scaled by dt/2. The contravariant velocity carries the metric, which is 1
// on this mesh.
double pressure_work_volume(const RunResult& run) {
  const SystemDescriptor& sys = run.prob.sys;
  const int N = run.N;
  const int M = run.M;
  const int p = sys.p;
  const double half_dt = 0.5 * run.mesh.dt();
  KahanSum sum;
  std::vector<double> v(N + 1);
  for (const SlabSolution& slab : run.slabs) {
    for (int k = 0; k < run.mesh.num_elements; ++k) {
      for (int sig = 0; sig <= M; ++sig) {
        for (int i = 0; i <= N; ++i) {
          const auto u = slab.node(sig, k, i);
          v[i] = u[1] / u[0];
        }
        for (int i = 0; i <= N; ++i) {
          double dv = 0.0;
          for (int m = 0; m <= N; ++m) dv += run.space_rule.d(i, m) * v[m];
          const auto u = slab.node(sig, k, i);
          sum.add(half_dt * run.time_rule.weight(sig) * run.space_rule.weight(i) *
                  pressure(sys, u) * dv);
        }
      }
    }
  }
  return sum.value();
}

// Interior-face pressure work sum over all slabs: (dt/2) <{{p}} [[v]], 1>_M
// per interface, all spatial interfaces of the periodic mesh.
double pressure_work_surface(const RunResult& run) {
  const SystemDescriptor& sys = run.prob.sys;
  const int N = run.N;
  const int M = run.M;
  const double half_dt = 0.5 * run.mesh.dt();
  const int KS = run.mesh.num_elements;
  KahanSum sum;
  for (const SlabSolution& slab : run.slabs) {
    for (int k = 0; k < KS; ++k) {
      const int kp = (k + 1) % KS;
      for (int sig = 0; sig <= M; ++sig) {
        const auto ul = slab.node(sig, k, N);
        const auto ur = slab.node(sig, kp, 0);
        const double pl = pressure(sys, ul);
        const double pr = pressure(sys, ur);
        const double vl = ul[1] / ul[0];
        const double vr = ur[1] / ur[0];
        sum.add(half_dt * run.time_rule.weight(sig) * 0.5 * (pl + pr) * (vr - vl));
      }
    }
  }
  return sum.value();
}

} // namespace

double xi_S(const RunResult& run) {
  return delta_S(run) + initial_projection_entropy(run);
}

double theta_K(const RunResult& run) {
  const double k0 = total_kinetic_energy(run.prob.sys, run.space_rule,
                                         run.mesh.jacobian(), run.initial);
  const SlabSolution& last = run.slabs.back();
  std::span<const double> final_trace{
      last.values.data() + last.dof() - static_cast<int>(run.initial.size()),
      run.initial.size()};
  const double kT = total_kinetic_energy(run.prob.sys, run.space_rule,
                                         run.mesh.jacobian(), final_trace);
  return kT - k0 - pressure_work_volume(run) - pressure_work_surface(run) -
         initial_projection_kinetic(run);
}

std::vector<double> l2_error(const RunResult& run) {
  if (!run.prob.has_exact()) {
    throw ConfigError("l2_error: problem has no exact solution");
  }
  const SystemDescriptor& sys = run.prob.sys;
  const int N = run.N;
  const int p = sys.p;
  const SbpOperator fine = lgl_rule(2 * N);
  const int nf = fine.num_nodes();

  // Interpolation matrix from the solution nodes to the oversampled grid.
  std::vector<double> interp(static_cast<size_t>(nf) * (N + 1));
  for (int a = 0; a < nf; ++a) {
    lagrange_basis(run.space_rule, fine.node(a),
                   {interp.data() + a * (N + 1), static_cast<size_t>(N + 1)});
  }

  const SlabSolution& last = run.slabs.back();
  const double T = run.mesh.t_final;
  std::vector<KahanSum> acc(p);
  std::vector<double> uex(p);
  for (int k = 0; k < run.mesh.num_elements; ++k) {
    const double x_left = run.mesh.x_lo + k * run.mesh.dx();
    for (int a = 0; a < nf; ++a) {
      const double x = x_left + 0.5 * run.mesh.dx() * (fine.node(a) + 1.0);
      run.prob.exact(x, T, uex);
      for (int c = 0; c < p; ++c) {
        double ui = 0.0;
        for (int i = 0; i <= N; ++i) {
          ui += interp[a * (N + 1) + i] * last.node(run.M, k, i)[c];
        }
        const double diff = ui - uex[c];
        acc[c].add(fine.weight(a) * run.mesh.jacobian() * diff * diff);
      }
    }
  }
  std::vector<double> err(p);
  for (int c = 0; c < p; ++c) err[c] = std::sqrt(acc[c].value());
  return err;
}

std::vector<double> eoc(std::span<const double> coarse, std::span<const double> fine,
                        double ratio) {
  std::vector<double> out(coarse.size());
  for (size_t c = 0; c < coarse.size(); ++c) {
    out[c] = std::log(coarse[c] / fine[c]) / std::log(ratio);
  }
  return out;
}

DiagnosticsRecord diagnostics(const RunResult& run) {
  DiagnosticsRecord rec;
  rec.S_initial = total_entropy(run.prob.sys, run.space_rule, run.mesh.jacobian(),
                                run.initial);
  const SlabSolution& last = run.slabs.back();
  std::span<const double> final_trace{
      last.values.data() + last.dof() - static_cast<int>(run.initial.size()),
      run.initial.size()};
  rec.S_final = total_entropy(run.prob.sys, run.space_rule, run.mesh.jacobian(),
                              final_trace);
  rec.delta_S = rec.S_final - rec.S_initial;
  rec.initial_projection_S = initial_projection_entropy(run);
  rec.xi_S = rec.delta_S + rec.initial_projection_S;
  rec.K_initial = total_kinetic_energy(run.prob.sys, run.space_rule,
                                       run.mesh.jacobian(), run.initial);
  rec.K_final = total_kinetic_energy(run.prob.sys, run.space_rule,
                                     run.mesh.jacobian(), final_trace);
  rec.pressure_work_volume = pressure_work_volume(run);
  rec.pressure_work_surface = pressure_work_surface(run);
  rec.initial_projection_K = initial_projection_kinetic(run);
  rec.theta_K = rec.K_final - rec.K_initial - rec.pressure_work_volume -
                rec.pressure_work_surface - rec.initial_projection_K;
  if (run.prob.has_exact()) rec.l2_errors = l2_error(run);
  return rec;
}

std::string diagnostics_csv_header() {
  return "S_initial,S_final,delta_S,xi_S,K_initial,K_final,theta_K,"
         "pressure_work_volume,pressure_work_surface,"
         "initial_projection_S,initial_projection_K";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& rec) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                format_guard(rec.S_initial), format_guard(rec.S_final),
                format_guard(rec.delta_S), format_guard(rec.xi_S),
                format_guard(rec.K_initial), format_guard(rec.K_final),
                format_guard(rec.theta_K), format_guard(rec.pressure_work_volume),
                format_guard(rec.pressure_work_surface),
                format_guard(rec.initial_projection_S),
                format_guard(rec.initial_projection_K));
  return buf;
}

} // namespace stdg
