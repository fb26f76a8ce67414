#pragma once

#include <Eigen/Core>

namespace ldg {

// 1D rule on [0,1].
struct QuadRule1D {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(points.size()); }
};

// Rule on the reference triangle {(x,y): x,y >= 0, x+y <= 1}.
struct TriangleRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;
  Eigen::VectorXd weights;  // sum to 1/2
  int size() const { return static_cast<int>(weights.size()); }
};

// n-point Gauss-Legendre on [0,1]; exact for degree <= 2n-1.
QuadRule1D gauss_legendre(int n);

// n-point Gauss-Jacobi with weight (1-x) on [0,1]; the weight is folded
// into the returned weights, which sum to 1/2.
QuadRule1D gauss_jacobi10(int n);

// Conical product of Gauss-Legendre and Gauss-Jacobi(1,0) through the
// Duffy map; exact for all bivariate polynomials of total degree <= 2n-1.
TriangleRule triangle_rule(int n);

}  // namespace ldg
