#include "ldg/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace ldg {

namespace {

// Golub-Welsch: nodes/weights on [-1,1] from the three-term recurrence of
// the orthogonal polynomials (diagonal a_k, squared off-diagonal b_k).
void golub_welsch(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                  double mu0, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    T(i, i) = a(i);
    if (i + 1 < n) T(i, i + 1) = T(i + 1, i) = std::sqrt(b(i + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  x = es.eigenvalues();
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    w(i) = mu0 * v0 * v0;
  }
}

}  // namespace

QuadRule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n), b(n);
  b(0) = 0.0;
  for (int k = 1; k < n; ++k) b(k) = k * k / (4.0 * k * k - 1.0);
  Eigen::VectorXd x, w;
  golub_welsch(a, b, 2.0, x, w);
  QuadRule1D rule;
  rule.points = (x.array() + 1.0) / 2.0;
  rule.weights = w / 2.0;
  return rule;
}

QuadRule1D gauss_jacobi10(int n) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi10: n >= 1 required");
  // weight (1-t) on [-1,1]: alpha=1, beta=0
  Eigen::VectorXd a(n), b(n);
  for (int k = 0; k < n; ++k)
    a(k) = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
  b(0) = 0.0;
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + 1.0;
    b(k) = k * (k + 1.0) / (d * d);
  }
  Eigen::VectorXd x, w;
  golub_welsch(a, b, 2.0, x, w);
  QuadRule1D rule;
  rule.points = (x.array() + 1.0) / 2.0;
  rule.weights = w / 4.0;  // maps the (1-t) weight onto (1-x) over [0,1]
  return rule;
}

TriangleRule triangle_rule(int n) {
  const QuadRule1D gl = gauss_legendre(n);
  const QuadRule1D gj = gauss_jacobi10(n);
  TriangleRule rule;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  int q = 0;
  for (int j = 0; j < n; ++j) {
    const double eta = gj.points(j);
    for (int i = 0; i < n; ++i, ++q) {
      // Duffy map x = xi(1-eta), y = eta; Jacobian (1-eta) sits in gj weights
      rule.points(q, 0) = gl.points(i) * (1.0 - eta);
      rule.points(q, 1) = eta;
      rule.weights(q) = gl.weights(i) * gj.weights(j);
    }
  }
  return rule;
}

}  // namespace ldg
