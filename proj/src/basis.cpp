#include "ldg/basis.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

namespace ldg {

namespace {

// Exact moment on the reference triangle: int x^a y^b = a! b! / (a+b+2)!
double triangle_moment(int a, int b) {
  double m = 1.0;
  // a! b! / (a+b+2)! computed as a product to avoid factorial overflow
  for (int i = 1; i <= a + b + 2; ++i) {
    m /= i;
    if (i <= a) m *= i;
  }
  for (int i = 1; i <= b; ++i) m *= i;
  return m;
}

}  // namespace

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
  if (degree < 0 || degree > 8)
    throw std::invalid_argument("ReferenceBasis: degree out of supported range");
  for (int d = 0; d <= degree; ++d)
    for (int a = d; a >= 0; --a) exponents_.emplace_back(a, d - a);
  size_ = static_cast<int>(exponents_.size());

  Eigen::MatrixXd gram(size_, size_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j)
      gram(i, j) = triangle_moment(exponents_[i].first + exponents_[j].first,
                                   exponents_[i].second + exponents_[j].second);

  // Cholesky of the monomial Gram matrix; a second pass removes the
  // residual loss of orthogonality from the first factorization.
  coeff_ = Eigen::MatrixXd::Identity(size_, size_);
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::MatrixXd g = coeff_ * gram * coeff_.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("ReferenceBasis: Gram matrix not SPD");
    coeff_ = llt.matrixL().solve(coeff_);
  }
}

void ReferenceBasis::eval(const Eigen::Vector2d& ref, Eigen::VectorXd& values,
                          Eigen::Matrix<double, Eigen::Dynamic, 2>& grads) const {
  Eigen::VectorXd mono(size_);
  Eigen::Matrix<double, Eigen::Dynamic, 2> dmono(size_, 2);
  const double x = ref.x(), y = ref.y();
  auto ipow = [](double v, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= v;
    return r;
  };
  for (int j = 0; j < size_; ++j) {
    const int a = exponents_[j].first, b = exponents_[j].second;
    mono(j) = ipow(x, a) * ipow(y, b);
    dmono(j, 0) = a > 0 ? a * ipow(x, a - 1) * ipow(y, b) : 0.0;
    dmono(j, 1) = b > 0 ? b * ipow(x, a) * ipow(y, b - 1) : 0.0;
  }
  values = coeff_ * mono;
  grads = coeff_ * dmono;
}

}  // namespace ldg
