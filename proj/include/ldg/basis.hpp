#pragma once

#include <Eigen/Core>
#include <vector>

namespace ldg {

// L2-orthonormal polynomial basis on the reference triangle, built by
// Gram-Schmidt on the monomials x^a y^b ordered by total degree.
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return size_; }

  // values(i) and grads(i, 0:1) of every basis member at a reference point
  void eval(const Eigen::Vector2d& ref, Eigen::VectorXd& values,
            Eigen::Matrix<double, Eigen::Dynamic, 2>& grads) const;

 private:
  int degree_;
  int size_;
  std::vector<std::pair<int, int>> exponents_;
  Eigen::MatrixXd coeff_;  // basis i = sum_j coeff_(i,j) * monomial j
};

}  // namespace ldg
