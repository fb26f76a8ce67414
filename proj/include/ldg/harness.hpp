#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldg/forms.hpp"
#include "ldg/memory.hpp"

namespace ldg {

// Exact solution u = e^t sin(pi x) sin(pi y) on the unit square with A = I
// and kernel e^{t-s} I; the source is derived in closed form so the PDE holds.
struct ManufacturedProblem {
  ProblemCoefficients coeffs;
  std::function<double(const Eigen::Vector2d&, double)> exact_u;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&, double)> exact_grad;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&, double)> exact_sigma;
};

ManufacturedProblem build_manufactured();

// A-priori rate exponents (P, D, R, S); expected h-orders are P+D for the
// displacement and P for the flux variables.
std::array<double, 4> predicted_rates(const StabilizationConfig& cfg, int p,
                                      int r);

// Named stabilization regimes: c11 in {"one", "inv-h"}, c22 in {"zero",
// "one", "h"}.
StabilizationConfig make_regime(const std::string& c11, const std::string& c22);
std::string regime_name(const StabilizationConfig& cfg);

struct SolveConfig {
  int mesh_n = 8;
  int degree = 1;
  StabilizationConfig stab;
  double k = 0.0;        // 0: use the study rule k = min(h/2, h^{(p+1)/2})
  double t_final = 1.0;
  std::string dump_dir;  // optional per-step state dumps
};

struct SolveResult {
  double h = 0.0, k = 0.0;
  double e_U = 0.0;  // ||U^N - u(t_N)||
  double e_Z = 0.0;  // ||Z^{N-1/2} - sigma(t_{N-1/2})|| (half-step convention)
  double wall_time_s = 0.0;
};

SolveResult run_single_solve(const ManufacturedProblem& problem,
                             const SolveConfig& config);

struct StudyConfig {
  std::vector<int> degrees{1, 2, 3};
  std::vector<int> levels{4, 8, 16, 32};
  StabilizationConfig stab;
  double t_final = 1.0;
  int regularity = 8;  // r used for the predicted exponents (smooth data)
};

struct LevelRecord {
  int degree = 0;
  int level = 0;
  SolveResult result;
  double eoc_U = 0.0, eoc_Z = 0.0;  // 0 on the coarsest level
};

struct ErrorReport {
  std::string regime;
  std::vector<LevelRecord> records;
  // finest-pair EOCs per degree, in the order of StudyConfig::degrees
  std::vector<double> final_eoc_U, final_eoc_Z;
  std::vector<double> predicted_u_order, predicted_flux_order;
};

ErrorReport run_convergence_study(const ManufacturedProblem& problem,
                                  const StudyConfig& config);

// Fixed 6-significant-digit formatting so identical runs give identical files.
void write_csv(const ErrorReport& report, std::ostream& out);

double time_step_rule(double h, int degree);

}  // namespace ldg
