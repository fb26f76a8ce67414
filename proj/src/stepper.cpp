#include "ldg/stepper.hpp"

#include <cmath>
#include <stdexcept>

namespace ldg {

namespace {

void append_block(std::vector<Eigen::Triplet<double>>& trip, const SparseMat& m,
                  int row0, int col0, double scale) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMat::InnerIterator it(m, k); it; ++it)
      trip.emplace_back(row0 + static_cast<int>(it.row()),
                        col0 + static_cast<int>(it.col()), scale * it.value());
}

}  // namespace

TimeState init_state(const DGSpace& space, const SystemMatrices&,
                     const ProblemCoefficients& coeffs) {
  TimeState s;
  s.n = 0;
  s.alpha_curr = space.l2_project(coeffs.u0).values;
  s.alpha_prev = Eigen::VectorXd::Zero(space.num_scalar_dofs());
  s.u1_coeffs = space.l2_project(coeffs.u1).values;

  VectorField grad_u0 = coeffs.grad_u0;
  if (!grad_u0) {
    auto u0 = coeffs.u0;
    grad_u0 = [u0](const Eigen::Vector2d& x) {
      const double d = 1e-4;
      auto der = [&](int c) {
        Eigen::Vector2d e = Eigen::Vector2d::Zero();
        e(c) = 1.0;
        return (-u0(x + 2 * d * e) + 8 * u0(x + d * e) - 8 * u0(x - d * e) +
                u0(x - 2 * d * e)) /
               (12 * d);
      };
      return Eigen::Vector2d(der(0), der(1));
    };
  }
  s.beta0 = space.l2_project(grad_u0).values;
  auto A = coeffs.A;
  s.gamma0 = space
                 .l2_project([&A, &grad_u0](const Eigen::Vector2d& x) {
                   return Eigen::Vector2d(A(x) * grad_u0(x));
                 })
                 .values;
  return s;
}

Stepper::Stepper(const DGSpace& space, const SystemMatrices& matrices,
                 const ProblemCoefficients& coeffs,
                 const StabilizationConfig& cfg, const TimeGrid& grid)
    : space_(&space), mats_(&matrices), coeffs_(&coeffs), cfg_(cfg), grid_(grid) {
  if (grid.N < 1 || grid.k <= 0.0)
    throw std::invalid_argument("Stepper: invalid time grid");
  state_ = init_state(space, matrices, coeffs);
  implicit_mem_ = implicit_coefficient(space, coeffs, 0, grid);
}

SparseMat Stepper::build_system(bool first) const {
  const int N = space_->num_scalar_dofs();
  const int M = space_->num_vector_dofs();
  const double k = grid_.k;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(mats_->A1.nonZeros()) * 3 +
               mats_->J.nonZeros() + mats_->J1.nonZeros() +
               mats_->A2.nonZeros() + 3 * M + N);

  // unknowns x = [alpha; beta; gamma], rows: gradient eq, flux eq, scalar eq
  // -A1^T in the alpha block: emit by swapping row/col
  for (int kk = 0; kk < mats_->A1.outerSize(); ++kk)
    for (SparseMat::InnerIterator it(mats_->A1, kk); it; ++it)
      trip.emplace_back(static_cast<int>(it.col()), static_cast<int>(it.row()),
                        -it.value());
  append_block(trip, mats_->M_vector, 0, N, 1.0);
  append_block(trip, mats_->J1, 0, N + M, 1.0);

  append_block(trip, mats_->A2, M, N, 1.0);
  append_block(trip, implicit_mem_, M, N, 1.0);
  append_block(trip, mats_->M_vector, M, N + M, -1.0);

  if (first) {
    append_block(trip, mats_->M_scalar, 2 * M, 0, 4.0 / (k * k));
    append_block(trip, mats_->J, 2 * M, 0, 1.0);
    append_block(trip, mats_->A1, 2 * M, N + M, 1.0);
  } else {
    append_block(trip, mats_->M_scalar, 2 * M, 0, 2.0 / (k * k));
    append_block(trip, mats_->J, 2 * M, 0, 0.5);
    append_block(trip, mats_->A1, 2 * M, N + M, 0.5);
  }

  SparseMat S(N + 2 * M, N + 2 * M);
  S.setFromTriplets(trip.begin(), trip.end());
  return S;
}

Eigen::VectorXd Stepper::solve(const SparseMat& system, const Eigen::VectorXd& rhs,
                               Eigen::SparseLU<SparseMat>& lu, bool& factorized) {
  if (!factorized) {
    lu.compute(system);
    if (lu.info() != Eigen::Success)
      throw std::runtime_error(
          "Stepper: sparse factorization failed (singular block system)");
    factorized = true;
  }
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("Stepper: back substitution failed");

  const int N = space_->num_scalar_dofs();
  const int M = space_->num_vector_dofs();
  const Eigen::VectorXd r = system * x - rhs;
  last_residuals_ =
      Eigen::Vector3d(r.segment(0, M).norm(), r.segment(M, M).norm(),
                      r.segment(2 * M, N).norm());
  return x;
}

void Stepper::advance() {
  if (state_.n >= grid_.N) throw std::runtime_error("Stepper: grid exhausted");
  if (state_.n == 0)
    first_step();
  else
    general_step();
}

void Stepper::first_step() {
  const int N = space_->num_scalar_dofs();
  const int M = space_->num_vector_dofs();
  const double k = grid_.k;

  if (system_first_.rows() == 0) system_first_ = build_system(true);

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + 2 * M);
  // memory at n = 0: empty history, only the implicit part (in the matrix)
  rhs.segment(2 * M, N) = assemble_load(*space_, *coeffs_, grid_.t_half(0)) +
                          (2.0 / k) * (mats_->M_scalar * state_.u1_coeffs) +
                          (4.0 / (k * k)) * (mats_->M_scalar * state_.alpha_curr);

  finish_step(solve(system_first_, rhs, lu_first_, first_factorized_));
}

void Stepper::general_step() {
  const int N = space_->num_scalar_dofs();
  const int M = space_->num_vector_dofs();
  const double k = grid_.k;
  const int n = state_.n;

  if (!coeffs_->B_stationary) {
    implicit_mem_ = implicit_coefficient(*space_, *coeffs_, n, grid_);
    system_general_ = build_system(false);
    general_factorized_ = false;
  } else if (system_general_.rows() == 0) {
    system_general_ = build_system(false);
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + 2 * M);
  rhs.segment(M, M) = -memory_rhs(state_.history, *space_, *coeffs_, n, grid_);

  const Eigen::VectorXd load_quarter =
      0.25 * (assemble_load(*space_, *coeffs_, grid_.t(n + 1)) +
              2.0 * assemble_load(*space_, *coeffs_, grid_.t(n)) +
              assemble_load(*space_, *coeffs_, grid_.t(n - 1)));
  rhs.segment(2 * M, N) =
      load_quarter +
      (1.0 / (k * k)) *
          (mats_->M_scalar * (3.0 * state_.alpha_curr - state_.alpha_prev)) -
      0.5 * (mats_->A1 * state_.gamma_half_prev + mats_->J * state_.alpha_half_prev);

  finish_step(solve(system_general_, rhs, lu_general_, general_factorized_));
}

void Stepper::finish_step(const Eigen::VectorXd& x) {
  const int N = space_->num_scalar_dofs();
  const int M = space_->num_vector_dofs();
  const Eigen::VectorXd alpha_half = x.segment(0, N);
  const Eigen::VectorXd beta_half = x.segment(N, M);
  const Eigen::VectorXd gamma_half = x.segment(N + M, M);

  const Eigen::VectorXd dt_u = (2.0 / grid_.k) * (alpha_half - state_.alpha_curr);
  const double energy2 = dt_u.dot(mats_->M_scalar * dt_u) +
                         beta_half.dot(mats_->A2 * beta_half) +
                         gamma_half.dot(mats_->J1 * gamma_half) +
                         alpha_half.dot(mats_->J * alpha_half);
  state_.energy_log.push_back(std::sqrt(std::max(0.0, energy2)));

  state_.alpha_prev = state_.alpha_curr;
  state_.alpha_curr = 2.0 * alpha_half - state_.alpha_curr;
  state_.alpha_half_prev = alpha_half;
  state_.beta_half_prev = beta_half;
  state_.gamma_half_prev = gamma_half;
  state_.history.append(beta_half);
  ++state_.n;
}

double Stepper::energy_norm() const {
  if (state_.energy_log.empty())
    throw std::runtime_error("energy_norm: no completed step");
  return state_.energy_log.back();
}

void Stepper::dump_state(std::ostream& out) const {
  out << "step " << state_.n << " " << grid_.t(state_.n) << "\n";
  out.precision(17);
  auto dump = [&out](const char* name, const Eigen::VectorXd& v) {
    out << name << " " << v.size() << "\n";
    for (Eigen::Index i = 0; i < v.size(); ++i) out << v(i) << "\n";
  };
  dump("alpha", state_.alpha_curr);
  if (state_.beta_half_prev.size()) dump("beta_half", state_.beta_half_prev);
  if (state_.gamma_half_prev.size()) dump("gamma_half", state_.gamma_half_prev);
}

}  // namespace ldg
