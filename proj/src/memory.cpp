#include "ldg/memory.hpp"

#include <stdexcept>

namespace ldg {

double eps_quadrature(const std::function<double(double)>& phi, int n,
                      const TimeGrid& grid) {
  if (n < 0 || n > grid.N)
    throw std::invalid_argument("eps_quadrature: level outside [0, N]");
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += phi(grid.t_half(j));
  return grid.k * sum;
}

Eigen::VectorXd memory_rhs(const History& history, const DGSpace& space,
                           const ProblemCoefficients& coeffs, int n,
                           const TimeGrid& grid) {
  if (history.size() < n)
    throw std::runtime_error("memory_rhs: history holds fewer than n entries");
  const int M = space.num_vector_dofs();
  if (n == 0) return Eigen::VectorXd::Zero(M);

  const double tn1 = grid.t(n + 1), tn = grid.t(n);
  if (coeffs.kernel_scalar) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(M);
    for (int j = 0; j < n; ++j) {
      const double th = grid.t_half(j);
      const double w = coeffs.kernel_scalar(tn1 - th) + coeffs.kernel_scalar(tn - th);
      acc += w * history.beta_half(j);
    }
    // kernel mass = b(tau)*M_vector, so one mass apply covers the whole sum
    return (grid.k / 2.0) * (assemble_vector_mass(space) * acc);
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
  for (int j = 0; j < n; ++j) {
    const double th = grid.t_half(j);
    const SparseMat b1 = assemble_kernel_mass(space, coeffs, tn1, th);
    const SparseMat b2 = assemble_kernel_mass(space, coeffs, tn, th);
    rhs += (grid.k / 2.0) * ((b1 + b2) * history.beta_half(j));
  }
  return rhs;
}

SparseMat implicit_coefficient(const DGSpace& space,
                               const ProblemCoefficients& coeffs, int n,
                               const TimeGrid& grid) {
  if (n < 0) throw std::invalid_argument("implicit_coefficient: n >= 0 required");
  return (grid.k / 2.0) *
         assemble_kernel_mass(space, coeffs, grid.t(n + 1), grid.t_half(n));
}

}  // namespace ldg
