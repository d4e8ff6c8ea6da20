#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "stdg/diagnostics.hpp"
#include "stdg/errors.hpp"
#include "stdg/problems.hpp"
#include "stdg/solver.hpp"

namespace {

using namespace stdg;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file " + path);
    os = &file;
  }
  void line(const std::string& s) { *os << s << "\n"; }
};

struct LadderEntry {
  int kt, ks;
};

struct ConvergenceRow {
  int kt, ks;
  std::vector<double> errors;
};

int ladder_thread_cap(size_t rungs) {
  if (const char* env = std::getenv("STDG_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) return std::min<int>(cap, rungs);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::min<size_t>(hw == 0 ? 1 : hw, rungs);
}

int run_convergence(const std::string& preset, int M, int N, int kt0, int ks0,
                    int levels, double t_final, SurfaceFlux flux,
                    TemporalCoupling temporal, double amplitude, Output& out) {
  std::vector<LadderEntry> ladder;
  if (preset == "table1") {
    M = 2; N = 2;
    for (int k = 2; k <= 32; k *= 2) ladder.push_back({k, k});
  } else if (preset == "table2") {
    M = 2; N = 2;
    for (int k = 2; k <= 32; k *= 2) ladder.push_back({2 * k, k});
  } else if (preset == "table3") {
    M = 3; N = 3;
    for (int k = 2; k <= 32; k *= 2) ladder.push_back({k, k});
  } else if (preset == "table4") {
    M = 3; N = 2;
    for (int k = 2; k <= 32; k *= 2) ladder.push_back({k, k});
  } else if (preset == "table5") {
    M = 2; N = 3;
    for (int k = 2; k <= 32; k *= 2) ladder.push_back({k, k});
  } else if (preset.empty()) {
    for (int l = 0; l < levels; ++l) ladder.push_back({kt0 << l, ks0 << l});
  } else {
    throw ConfigError("unknown preset " + preset);
  }

  const ProblemSpec prob = manufactured_euler(1.4, amplitude);
  const int threads = ladder_thread_cap(ladder.size());

  auto run_one = [&](const LadderEntry& e, Parallelism par) {
    MeshConfig mesh;
    mesh.num_elements = e.ks;
    mesh.num_slabs = e.kt;
    mesh.t_final = t_final;
    SolverConfig cfg;
    cfg.spatial_flux = flux;
    cfg.temporal_state = temporal;
    cfg.parallelism = par;
    const RunResult run = march(prob, mesh, M, N, cfg);
    return ConvergenceRow{e.kt, e.ks, l2_error(run)};
  };

  out.line("K_T,K_S,L2_rho,L2_rhov,L2_E,EOC_rho,EOC_rhov,EOC_E");
  std::vector<ConvergenceRow> rows(ladder.size());
  std::string failure;
  if (threads <= 1) {
    for (size_t i = 0; i < ladder.size() && failure.empty(); ++i) {
      try {
        rows[i] = run_one(ladder[i], Parallelism::OpenMp);
      } catch (const std::exception& e) {
        failure = e.what();
        rows.resize(i);
      }
    }
  } else {
    // wave-wise parallel execution; per-run arithmetic stays serial so rows
    // are independent of the thread cap
    for (size_t base = 0; base < ladder.size() && failure.empty();
         base += threads) {
      std::vector<std::future<ConvergenceRow>> wave;
      const size_t end = std::min(ladder.size(), base + threads);
      for (size_t i = base; i < end; ++i) {
        wave.push_back(std::async(std::launch::async, run_one, ladder[i],
                                  Parallelism::Serial));
      }
      for (size_t i = base; i < end; ++i) {
        try {
          rows[i] = wave[i - base].get();
        } catch (const std::exception& e) {
          if (failure.empty()) {
            failure = e.what();
            rows.resize(i);
          }
        }
      }
    }
  }

  for (size_t i = 0; i < rows.size(); ++i) {
    std::string line = std::to_string(rows[i].kt) + "," + std::to_string(rows[i].ks);
    for (double e : rows[i].errors) line += "," + fmt(e);
    if (i == 0) {
      line += ",,,";
    } else {
      const double ratio = static_cast<double>(rows[i].ks) / rows[i - 1].ks;
      const auto r = eoc(rows[i - 1].errors, rows[i].errors, ratio);
      for (double v : r) line += "," + fmt(v);
    }
    out.line(line);
  }
  if (!failure.empty()) {
    out.line("# aborted: " + failure);
    return kExitSolver;
  }
  return 0;
}

int run_entropy_stability(int kt, int ks, int M, int N, Output& out) {
  MeshConfig mesh;
  mesh.num_elements = ks;
  mesh.num_slabs = kt;
  SolverConfig cfg;
  cfg.spatial_flux = SurfaceFlux::EntropyStable;
  cfg.temporal_state = TemporalCoupling::Upwind;
  cfg.parallelism = Parallelism::OpenMp;
  const RunResult run = march(shock_euler(), mesh, M, N, cfg);
  out.line("t,delta_S");
  for (const auto& [t, ds] : entropy_trace(run)) {
    out.line(fmt(t) + "," + fmt(ds));
  }
  return 0;
}

struct CheckConfig {
  int kt, ks, M, N;
};

const std::vector<CheckConfig> kCheckConfigs = {
    {5, 4, 3, 2}, {4, 5, 2, 3}, {2, 2, 3, 4},
    {2, 3, 6, 5}, {2, 2, 5, 3}, {1, 8, 6, 4}};

int run_identity_check(bool kinetic, std::optional<CheckConfig> custom, Output& out) {
  const ProblemSpec prob = kinetic ? density_wave_euler() : shock_euler();
  std::vector<CheckConfig> configs =
      custom ? std::vector<CheckConfig>{*custom} : kCheckConfigs;
  out.line(kinetic ? "K_T,K_S,M,N,Theta_K" : "K_T,K_S,M,N,Xi_S");
  for (const CheckConfig& c : configs) {
    MeshConfig mesh;
    mesh.num_elements = c.ks;
    mesh.num_slabs = c.kt;
    SolverConfig cfg;
    cfg.temporal_state = TemporalCoupling::EntropyConservative;
    cfg.spatial_flux = SurfaceFlux::Eckep;
    cfg.parallelism = Parallelism::OpenMp;
    const RunResult run = march(prob, mesh, c.M, c.N, cfg);
    const double value = kinetic ? theta_K(run) : xi_S(run);
    out.line(std::to_string(c.kt) + "," + std::to_string(c.ks) + "," +
             std::to_string(c.M) + "," + std::to_string(c.N) + "," + fmt(value));
  }
  return 0;
}

int run_dump_operator(int degree, Output& out) {
  const SbpOperator rule = lgl_rule(degree);
  auto fmt16 = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.16g", x == 0.0 ? 0.0 : x);
    return std::string(buf);
  };
  std::string nodes = "nodes", weights = "weights";
  for (int i = 0; i <= degree; ++i) {
    nodes += "," + fmt16(rule.node(i));
    weights += "," + fmt16(rule.weight(i));
  }
  out.line(nodes);
  out.line(weights);
  for (int i = 0; i <= degree; ++i) {
    std::string row = "D" + std::to_string(i);
    for (int j = 0; j <= degree; ++j) row += "," + fmt16(rule.d(i, j));
    out.line(row);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-stable space-time DGSEM for 1D conservation laws"};
  app.require_subcommand(1);

  int M = 2, N = 2, kt = 2, ks = 2, levels = 5, degree = 4, seed = 0;
  double t_final = 1.0, amplitude = 0.1;
  std::string preset, out_path, flux_name = "es", temporal_name = "upwind";
  bool custom = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write CSV here instead of stdout");
    cmd->add_option("--seed", seed, "random seed echoed for reproducibility");
  };

  CLI::App* conv = app.add_subcommand("convergence",
                                      "manufactured-solution refinement study");
  conv->add_option("--preset", preset, "table1|table2|table3|table4|table5");
  conv->add_option("--M", M, "temporal polynomial degree");
  conv->add_option("--N", N, "spatial polynomial degree");
  conv->add_option("--KT", kt, "slab count of the coarsest rung");
  conv->add_option("--KS", ks, "element count of the coarsest rung");
  conv->add_option("--levels", levels, "rungs in a custom ladder");
  conv->add_option("--T", t_final, "final time");
  conv->add_option("--amplitude", amplitude, "wave amplitude of the test solution");
  conv->add_option("--flux", flux_name, "surface flux: es|eckep");
  conv->add_option("--temporal-state", temporal_name,
                   "slab interface coupling: upwind|ec");
  add_common(conv);

  int est_kt = 4, est_ks = 4, est_M = 3, est_N = 2;
  CLI::App* est = app.add_subcommand("entropy-stability",
                                     "shock-problem total entropy trace");
  est->add_option("--KT", est_kt, "slab count (4, 16, and 128 reproduce the decay study)");
  est->add_option("--KS", est_ks, "element count");
  est->add_option("--M", est_M, "temporal polynomial degree");
  est->add_option("--N", est_N, "spatial polynomial degree");
  add_common(est);

  CLI::App* ecc = app.add_subcommand("entropy-conservation",
                                     "coupled-solve entropy balance check");
  ecc->add_flag("--custom", custom, "run a single custom configuration");
  ecc->add_option("--KT", kt);
  ecc->add_option("--KS", ks);
  ecc->add_option("--M", M);
  ecc->add_option("--N", N);
  add_common(ecc);

  CLI::App* kep = app.add_subcommand("kep-check",
                                     "coupled-solve kinetic-energy balance check");
  kep->add_flag("--custom", custom, "run a single custom configuration");
  kep->add_option("--KT", kt);
  kep->add_option("--KS", ks);
  kep->add_option("--M", M);
  kep->add_option("--N", N);
  add_common(kep);

  CLI::App* dump = app.add_subcommand("dump-operator",
                                      "print LGL nodes, weights, derivative matrix");
  dump->add_option("degree", degree, "polynomial degree")->required();
  add_common(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    Output out;
    out.open(out_path);
    SurfaceFlux flux = SurfaceFlux::EntropyStable;
    if (flux_name == "eckep") flux = SurfaceFlux::Eckep;
    else if (flux_name != "es") throw ConfigError("unknown flux " + flux_name);
    TemporalCoupling temporal = TemporalCoupling::Upwind;
    if (temporal_name == "ec") temporal = TemporalCoupling::EntropyConservative;
    else if (temporal_name != "upwind") {
      throw ConfigError("unknown temporal state " + temporal_name);
    }

    if (conv->parsed()) {
      return run_convergence(preset, M, N, kt, ks, levels, t_final, flux, temporal,
                             amplitude, out);
    }
    if (est->parsed()) return run_entropy_stability(est_kt, est_ks, est_M, est_N, out);
    if (ecc->parsed()) {
      return run_identity_check(
          false, custom ? std::optional<CheckConfig>({kt, ks, M, N}) : std::nullopt,
          out);
    }
    if (kep->parsed()) {
      return run_identity_check(
          true, custom ? std::optional<CheckConfig>({kt, ks, M, N}) : std::nullopt,
          out);
    }
    if (dump->parsed()) return run_dump_operator(degree, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NonConvergenceError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const AdmissibilityError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
