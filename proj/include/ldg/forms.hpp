#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <algorithm>
#include <functional>
#include <numbers>

#include "ldg/dgspace.hpp"

namespace ldg {

using SparseMat = Eigen::SparseMatrix<double>;

// Data of the continuous problem: elliptic coefficient A(x), memory kernel
// B(x,t,s), source and initial data. When `kernel_scalar` is set, the kernel
// is b(t-s)*I and kernel-weighted mass matrices reduce to scalar multiples
// of the vector mass matrix.
struct ProblemCoefficients {
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&)> A;
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&, double, double)> B;  // (x,t,s)
  std::function<double(double)> kernel_scalar;  // b(t-s), optional fast path
  bool B_stationary = false;  // B depends on (x, t-s) only
  std::function<double(const Eigen::Vector2d&, double)> f;
  std::function<double(const Eigen::Vector2d&)> u0;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> grad_u0;  // optional
  std::function<double(const Eigen::Vector2d&)> u1;
  double alpha_ellipticity = 1.0;
  double M_bound = 1.0;
};

// Stabilization family C11 = zeta*(h/p^2)^alpha, C22 = kappa*(h/p^2)^beta.
struct StabilizationConfig {
  double zeta = 1.0;
  double kappa = 1.0;
  double alpha_exp = 0.0;   // in [-1, 0]
  double beta_exp = 0.0;    // in [0, 1]
  // fixed unit-direction vector scaled to |C12| = 1/2
  Eigen::Vector2d c12 = Eigen::Vector2d::Constant(0.5 / std::numbers::sqrt2);

  double beta_hat() const { return kappa == 0.0 ? 1.0 : beta_exp; }
  double mu_star() const { return std::max(-alpha_exp, beta_hat()); }
  double mu_sub() const { return std::min(-alpha_exp, beta_hat()); }

  void validate() const;
};

// Assembled discrete operators. With the orthonormal basis M_scalar and
// M_vector are identities up to roundoff; they are still assembled so the
// solver code stays agnostic of the basis choice.
struct SystemMatrices {
  SparseMat M_scalar;  // N_h x N_h
  SparseMat M_vector;  // M_h x M_h, form A
  SparseMat A2;        // M_h x M_h, A(x)-weighted
  SparseMat A1;        // N_h x M_h, rows scalar test v, cols vector trial p
  SparseMat J;         // N_h x N_h, all edges
  SparseMat J1;        // M_h x M_h, interior edges
};

double stabilization_C11(const Edge& edge, const StabilizationConfig& cfg,
                         const DGSpace& space);
double stabilization_C22(const Edge& edge, const StabilizationConfig& cfg,
                         const DGSpace& space);

// M_scalar, M_vector and A2; throws if A(x) violates the documented
// ellipticity bound at a quadrature point.
void assemble_masses(const DGSpace& space, const ProblemCoefficients& coeffs,
                     SystemMatrices& out);

// Primal form A1(v,p) = sum_K int p.grad v - int_Gamma ({{p}} - C12 [[p]]).[[v]].
// C12 acts on interior edges only, matching the boundary flux definitions.
SparseMat assemble_A1(const DGSpace& space, const StabilizationConfig& cfg);

void assemble_penalties(const DGSpace& space, const StabilizationConfig& cfg,
                        SystemMatrices& out);

SystemMatrices assemble_system(const DGSpace& space,
                               const ProblemCoefficients& coeffs,
                               const StabilizationConfig& cfg);

// Plain vector mass matrix (the form A on W_h).
SparseMat assemble_vector_mass(const DGSpace& space);

// B(x,t,s)-weighted vector mass matrix.
SparseMat assemble_kernel_mass(const DGSpace& space,
                               const ProblemCoefficients& coeffs, double t,
                               double s);

Eigen::VectorXd assemble_load(const DGSpace& space,
                              const ProblemCoefficients& coeffs, double t);

}  // namespace ldg
