// Command-line driver: single solves and convergence studies for the
// hp-DG integro-differential wave solver.

#include <CLI11.hpp>
#include <Eigen/Core>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ldg/harness.hpp"

namespace {

// exit codes: 1 flags, 2 problem/mesh configuration, 3 solver, 4 i/o
constexpr int kExitFlags = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIO = 4;

void apply_thread_env() {
  if (const char* env = std::getenv("LDG_NUM_THREADS")) {
    const int n = std::atoi(env);
    Eigen::setNbThreads(n > 0 ? n : 0);  // 0 = auto
  }
}

ldg::StabilizationConfig parse_regime(const std::string& name) {
  // "c11-<one|inv-h>-c22-<zero|one|h>"
  const auto pos = name.find("-c22-");
  if (name.rfind("c11-", 0) != 0 || pos == std::string::npos)
    throw std::invalid_argument("bad regime name '" + name +
                                "', expected c11-<one|inv-h>-c22-<zero|one|h>");
  return ldg::make_regime(name.substr(4, pos - 4), name.substr(pos + 5));
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::ios_base::failure("cannot open output file " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();

  CLI::App app{"hp-DG solver for 2D hyperbolic integro-differential equations"};
  app.set_config("--config");

  std::string out_path, dump_dir;

  auto* solve = app.add_subcommand("solve", "single run on one mesh");
  int mesh_n = 8, degree = 1;
  std::string c11 = "one", c22 = "zero";
  double k = 0.0, t_final = 1.0;
  solve->add_option("--mesh-n", mesh_n, "cells per side of the unit square");
  solve->add_option("--degree", degree, "polynomial degree (1..4)");
  solve->add_option("--c11", c11, "C11 regime: one, inv-h");
  solve->add_option("--c22", c22, "C22 regime: zero, one, h");
  solve->add_option("--k", k, "time step (0: automatic rule)");
  solve->add_option("--t-final", t_final, "final time");
  solve->add_option("--out", out_path, "CSV output path (default stdout)");
  solve->add_option("--dump-fields", dump_dir, "directory for per-step dumps");

  auto* study = app.add_subcommand("study", "convergence study over mesh levels");
  std::string degrees_csv = "1,2,3", regime = "c11-one-c22-zero";
  int levels = 4;
  study->add_option("--degrees", degrees_csv, "comma-separated degrees");
  study->add_option("--levels", levels, "number of refinement levels from n=4");
  study->add_option("--regime", regime, "stabilization regime name");
  study->add_option("--t-final", t_final, "final time");
  study->add_option("--out", out_path, "CSV output path (default stdout)");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitFlags : 0;
  }

  try {
    const ldg::ManufacturedProblem problem = ldg::build_manufactured();
    std::ofstream file;

    if (*solve) {
      ldg::SolveConfig sc;
      sc.mesh_n = mesh_n;
      sc.degree = degree;
      sc.stab = ldg::make_regime(c11, c22);
      sc.k = k;
      sc.t_final = t_final;
      sc.dump_dir = dump_dir;
      const ldg::SolveResult r = ldg::run_single_solve(problem, sc);

      ldg::ErrorReport report;
      report.regime = ldg::regime_name(sc.stab);
      const auto rates = ldg::predicted_rates(sc.stab, degree, 8);
      report.predicted_u_order.push_back(rates[0] + rates[1]);
      report.predicted_flux_order.push_back(rates[0]);
      ldg::LevelRecord rec;
      rec.degree = degree;
      rec.level = mesh_n;
      rec.result = r;
      report.records.push_back(rec);
      ldg::write_csv(report, open_out(file, out_path));
    } else {
      ldg::StudyConfig scfg;
      scfg.degrees = parse_int_list(degrees_csv);
      scfg.levels.clear();
      for (int l = 0, n = 4; l < levels; ++l, n *= 2) scfg.levels.push_back(n);
      scfg.stab = parse_regime(regime);
      scfg.t_final = t_final;
      const ldg::ErrorReport report = ldg::run_convergence_study(problem, scfg);
      ldg::write_csv(report, open_out(file, out_path));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (configuration): " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error (io): " << e.what() << "\n";
    return kExitIO;
  } catch (const std::exception& e) {
    std::cerr << "error (solver): " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
