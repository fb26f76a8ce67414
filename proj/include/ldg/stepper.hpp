#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <memory>
#include <ostream>
#include <vector>

#include "ldg/forms.hpp"
#include "ldg/memory.hpp"

namespace ldg {

// Coefficient state of the three-field march: full-step displacement levels,
// lagged half-step values and the memory history.
struct TimeState {
  int n = 0;                       // completed steps
  Eigen::VectorXd alpha_curr;      // alpha^n
  Eigen::VectorXd alpha_prev;      // alpha^{n-1}
  Eigen::VectorXd alpha_half_prev; // alpha^{n-1/2}
  Eigen::VectorXd beta_half_prev;  // beta^{n-1/2}
  Eigen::VectorXd gamma_half_prev; // gamma^{n-1/2}
  Eigen::VectorXd beta0, gamma0;   // initial gradient/flux interpolants
  Eigen::VectorXd u1_coeffs;       // L2 projection of u_1
  History history;
  std::vector<double> energy_log;  // |||Phi^{n+1/2}||| per completed step
};

// Marches the implicit three-field scheme: a special first step, then one
// coupled block solve per level for (alpha, beta, gamma)^{n+1/2}.
class Stepper {
 public:
  Stepper(const DGSpace& space, const SystemMatrices& matrices,
          const ProblemCoefficients& coeffs, const StabilizationConfig& cfg,
          const TimeGrid& grid);

  const TimeState& state() const { return state_; }
  const TimeGrid& grid() const { return grid_; }

  // advances one step (dispatches to the first-step variant at n = 0)
  void advance();
  void run() { while (state_.n < grid_.N) advance(); }

  double energy_norm() const;  // |||Phi^{n-1/2}||| of the last completed step

  // residual norms of the three block equations for the last solve
  Eigen::Vector3d last_residuals() const { return last_residuals_; }

  void dump_state(std::ostream& out) const;

 private:
  void first_step();
  void general_step();
  Eigen::VectorXd solve(const SparseMat& system, const Eigen::VectorXd& rhs,
                        Eigen::SparseLU<SparseMat>& lu, bool& factorized);
  SparseMat build_system(bool first) const;
  void finish_step(const Eigen::VectorXd& solution);

  const DGSpace* space_;
  const SystemMatrices* mats_;
  const ProblemCoefficients* coeffs_;
  StabilizationConfig cfg_;
  TimeGrid grid_;
  TimeState state_;

  SparseMat implicit_mem_;  // (k/2) * kernel mass at lag k/2
  SparseMat system_first_, system_general_;
  Eigen::SparseLU<SparseMat> lu_first_, lu_general_;
  bool first_factorized_ = false;
  bool general_factorized_ = false;
  Eigen::Vector3d last_residuals_ = Eigen::Vector3d::Zero();
};

// alpha^0 = Pi_h u0, beta^0 = I_h grad(u0), gamma^0 = I_h (A grad u0), with
// Pi_h u1 cached for the first step. When grad_u0 is not supplied it is
// approximated by fourth-order central differences of u0.
TimeState init_state(const DGSpace& space, const SystemMatrices& matrices,
                     const ProblemCoefficients& coeffs);

}  // namespace ldg
