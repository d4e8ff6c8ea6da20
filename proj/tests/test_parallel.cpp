#include <vector>

#include "doctest.h"
#include "stdg/problems.hpp"
#include "stdg/solver.hpp"
#include "support.hpp"

using namespace stdg;
using stdg::testing::StateSampler;

// The OpenMP drivers iterate the same element kernels in the same per-row
// order as the serial reference, so results must agree bitwise.
TEST_CASE("parallel residual and jacobian match the serial reference") {
  const ProblemSpec prob = manufactured_euler();
  MeshConfig mesh;
  mesh.num_elements = 6;
  mesh.num_slabs = 3;

  SolverConfig serial_cfg;
  serial_cfg.parallelism = Parallelism::Serial;
  SolverConfig omp_cfg;
  omp_cfg.parallelism = Parallelism::OpenMp;

  SpaceTimeSolver serial(prob, mesh, 3, 2, serial_cfg);
  SpaceTimeSolver parallel(prob, mesh, 3, 2, omp_cfg);

  std::vector<double> u(serial.dof_per_slab() * 3);
  StateSampler sampler(808);
  for (size_t n = 0; n < u.size() / 3; ++n) {
    const std::vector<double> s = sampler.conserved(prob.sys);
    for (int c = 0; c < 3; ++c) u[n * 3 + c] = s[c];
  }
  const std::vector<double> trace = serial.initial_trace();

  std::vector<double> r1(u.size()), r2(u.size());
  serial.residual(u, trace, 0, 3, r1);
  parallel.residual(u, trace, 0, 3, r2);
  for (size_t i = 0; i < r1.size(); ++i) CHECK(r1[i] == r2[i]);

  std::vector<double> j1, j2;
  serial.jacobian(u, trace, 0, 3, j1);
  parallel.jacobian(u, trace, 0, 3, j2);
  REQUIRE(j1.size() == j2.size());
  for (size_t i = 0; i < j1.size(); ++i) CHECK(j1[i] == j2[i]);
}

TEST_CASE("parallel march reproduces the serial trajectory") {
  const ProblemSpec prob = manufactured_euler();
  MeshConfig mesh;
  mesh.num_elements = 4;
  mesh.num_slabs = 3;

  SolverConfig serial_cfg;
  SolverConfig omp_cfg;
  omp_cfg.parallelism = Parallelism::OpenMp;

  const RunResult a = march(prob, mesh, 2, 2, serial_cfg);
  const RunResult b = march(prob, mesh, 2, 2, omp_cfg);
  REQUIRE(a.slabs.size() == b.slabs.size());
  for (size_t n = 0; n < a.slabs.size(); ++n) {
    for (size_t i = 0; i < a.slabs[n].values.size(); ++i) {
      CHECK(a.slabs[n].values[i] == b.slabs[n].values[i]);
    }
  }
}
