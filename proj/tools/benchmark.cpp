// Timing comparison of the serial reference against the OpenMP drivers for
// residual assembly, the colored finite-difference Jacobian, and a full slab
// solve, with a bitwise equality check between the two paths.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "stdg/problems.hpp"
#include "stdg/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace stdg;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fill_sine_state(const SpaceTimeSolver& solver, std::vector<double>& u) {
  const int nodes = solver.dof_per_slab() / 3;
  u.resize(solver.dof_per_slab());
  for (int n = 0; n < nodes; ++n) {
    const double s = std::sin(0.37 * n);
    u[n * 3 + 0] = 2.0 + 0.3 * s;
    u[n * 3 + 1] = 0.4 * s;
    u[n * 3 + 2] = 4.0 + 0.5 * s;
  }
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both paths run serially\n");
#endif

  const ProblemSpec prob = manufactured_euler();
  MeshConfig mesh;
  mesh.num_elements = 192;
  mesh.num_slabs = 192;
  SolverConfig serial_cfg;
  serial_cfg.parallelism = Parallelism::Serial;
  SolverConfig omp_cfg;
  omp_cfg.parallelism = Parallelism::OpenMp;

  SpaceTimeSolver serial(prob, mesh, 3, 3, serial_cfg);
  SpaceTimeSolver parallel(prob, mesh, 3, 3, omp_cfg);
  const int n = serial.dof_per_slab();
  std::printf("slab system: %d unknowns (M=3, N=3, K_S=%d)\n\n", n,
              mesh.num_elements);

  std::vector<double> u, r1(n), r2(n);
  fill_sine_state(serial, u);
  const std::vector<double> trace = serial.initial_trace();

  constexpr int kReps = 40;
  auto t0 = Clock::now();
  for (int rep = 0; rep < kReps; ++rep) serial.residual(u, trace, 0, 1, r1);
  const double rs = seconds_since(t0) / kReps;
  t0 = Clock::now();
  for (int rep = 0; rep < kReps; ++rep) parallel.residual(u, trace, 0, 1, r2);
  const double rp = seconds_since(t0) / kReps;

  double dmax = 0.0;
  for (int i = 0; i < n; ++i) dmax = std::max(dmax, std::fabs(r1[i] - r2[i]));
  std::printf("residual assembly:  serial %8.3f ms   openmp %8.3f ms   speedup %.2fx"
              "   max|diff| %.1e\n",
              1e3 * rs, 1e3 * rp, rs / rp, dmax);

  MeshConfig jm = mesh;
  jm.num_elements = 24;
  jm.num_slabs = 24;
  SpaceTimeSolver js(prob, jm, 3, 3, serial_cfg);
  SpaceTimeSolver jp(prob, jm, 3, 3, omp_cfg);
  std::vector<double> uj;
  fill_sine_state(js, uj);
  const std::vector<double> trj = js.initial_trace();
  std::vector<double> j1, j2;
  t0 = Clock::now();
  js.jacobian(uj, trj, 0, 1, j1);
  const double jts = seconds_since(t0);
  t0 = Clock::now();
  jp.jacobian(uj, trj, 0, 1, j2);
  const double jtp = seconds_since(t0);
  dmax = 0.0;
  for (size_t i = 0; i < j1.size(); ++i) {
    dmax = std::max(dmax, std::fabs(j1[i] - j2[i]));
  }
  std::printf("fd jacobian (%4d): serial %8.3f ms   openmp %8.3f ms   speedup %.2fx"
              "   max|diff| %.1e\n",
              js.dof_per_slab(), 1e3 * jts, 1e3 * jtp, jts / jtp, dmax);

  MeshConfig sm;
  sm.num_elements = 32;
  sm.num_slabs = 32;
  SpaceTimeSolver ss(prob, sm, 2, 2, serial_cfg);
  SpaceTimeSolver sp(prob, sm, 2, 2, omp_cfg);
  t0 = Clock::now();
  const SlabSolution a = ss.solve_slab(ss.initial_trace(), 0);
  const double sts = seconds_since(t0);
  t0 = Clock::now();
  const SlabSolution b = sp.solve_slab(sp.initial_trace(), 0);
  const double stp = seconds_since(t0);
  dmax = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    dmax = std::max(dmax, std::fabs(a.values[i] - b.values[i]));
  }
  std::printf("slab solve  (%4d): serial %8.3f ms   openmp %8.3f ms   speedup %.2fx"
              "   max|diff| %.1e\n",
              ss.dof_per_slab(), 1e3 * sts, 1e3 * stp, sts / stp, dmax);

  return 0;
}
