#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "ldg/forms.hpp"

namespace ldg {

// Uniform partition of [0, T] into N steps of length k.
struct TimeGrid {
  double k = 0.0;
  int N = 0;
  double T = 0.0;

  TimeGrid() = default;
  TimeGrid(double step, int steps) : k(step), N(steps), T(step * steps) {}

  double t(int n) const { return n * k; }
  double t_half(int j) const { return (j + 0.5) * k; }
};

// Append-only store of the vector-field coefficients at half time levels.
class History {
 public:
  void append(const Eigen::VectorXd& beta_half) { data_.push_back(beta_half); }
  int size() const { return static_cast<int>(data_.size()); }
  const Eigen::VectorXd& beta_half(int j) const { return data_.at(j); }

 private:
  std::vector<Eigen::VectorXd> data_;
};

// Midpoint rule eps^n(phi) = k sum_{j<n} phi(t_{j+1/2}) for int_0^{t_n} phi.
double eps_quadrature(const std::function<double(double)>& phi, int n,
                      const TimeGrid& grid);

// Explicit part of the averaged memory quadrature at level n: the sum over
// stored history entries j = 0..n-1 with weights combining the kernels at
// t_{n+1} and t_n. The j = n term (unknown beta^{n+1/2}) is excluded and
// handled by implicit_coefficient.
Eigen::VectorXd memory_rhs(const History& history, const DGSpace& space,
                           const ProblemCoefficients& coeffs, int n,
                           const TimeGrid& grid);

// (k/2) * kernel mass at (t_{n+1}, t_{n+1/2}); constant across n for
// stationary kernels.
SparseMat implicit_coefficient(const DGSpace& space,
                               const ProblemCoefficients& coeffs, int n,
                               const TimeGrid& grid);

}  // namespace ldg
