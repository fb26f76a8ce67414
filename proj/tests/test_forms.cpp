#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ldg/forms.hpp"
#include "twin_a1.hpp"

using namespace ldg;

namespace {

ProblemCoefficients identity_coeffs() {
  ProblemCoefficients c;
  c.A = [](const Eigen::Vector2d&) { return Eigen::Matrix2d::Identity(); };
  c.kernel_scalar = [](double tau) { return std::exp(tau); };
  c.B_stationary = true;
  c.f = [](const Eigen::Vector2d&, double) { return 0.0; };
  c.u0 = [](const Eigen::Vector2d&) { return 0.0; };
  c.u1 = [](const Eigen::Vector2d&) { return 0.0; };
  return c;
}

double max_abs_diff(const SparseMat& a, const Eigen::MatrixXd& b) {
  return (Eigen::MatrixXd(a) - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("stabilization validate rejects out-of-range parameters") {
  StabilizationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.zeta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.zeta = 1.0;
  cfg.alpha_exp = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha_exp = -2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha_exp = 0.0;
  cfg.beta_exp = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.beta_exp = 0.0;
  cfg.kappa = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("stabilization exponent bookkeeping") {
  StabilizationConfig cfg;  // alpha = 0, beta = 0, kappa = 1
  CHECK(cfg.beta_hat() == 0.0);
  CHECK(cfg.mu_star() == 0.0);
  CHECK(cfg.mu_sub() == 0.0);
  cfg.kappa = 0.0;
  CHECK(cfg.beta_hat() == 1.0);  // kappa = 0 acts like beta = 1
  CHECK(cfg.mu_star() == 1.0);
  CHECK(cfg.mu_sub() == 0.0);
  cfg.alpha_exp = -1.0;
  CHECK(cfg.mu_star() == 1.0);
  CHECK(cfg.mu_sub() == 1.0);
  CHECK(cfg.c12.norm() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("penalty coefficient values on the uniform mesh") {
  const Mesh mesh = build_uniform_triangulation(4);  // h = sqrt(2)/4
  const double h = std::sqrt(2.0) / 4.0;

  StabilizationConfig cfg;
  cfg.alpha_exp = 0.0;
  {
    const DGSpace space(mesh, 2);
    for (const Edge& edge : mesh.edges)
      CHECK(stabilization_C11(edge, cfg, space) == doctest::Approx(1.0));
  }
  cfg.alpha_exp = -1.0;
  cfg.zeta = 3.0;
  {
    const DGSpace space(mesh, 2);
    // C11 = zeta * (h/p^2)^{-1} = 3 * 16/sqrt(2)
    const double expected = 3.0 * 4.0 / h;
    for (const Edge& edge : mesh.edges)
      CHECK(stabilization_C11(edge, cfg, space) ==
            doctest::Approx(expected).epsilon(1e-13));
  }
  cfg.kappa = 1.0;
  cfg.beta_exp = 1.0;
  {
    const DGSpace space(mesh, 2);
    const double expected = h / 4.0;  // (h/p^2)^1
    for (const Edge& edge : mesh.edges)
      CHECK(stabilization_C22(edge, cfg, space) ==
            doctest::Approx(expected).epsilon(1e-13));
  }
  cfg.kappa = 0.0;
  {
    const DGSpace space(mesh, 1);
    for (const Edge& edge : mesh.edges)
      CHECK(stabilization_C22(edge, cfg, space) == 0.0);
  }
}

TEST_CASE("C11 doubles when h halves in the inv-h regime") {
  StabilizationConfig cfg;
  cfg.alpha_exp = -1.0;
  const Mesh coarse = build_uniform_triangulation(4);
  const Mesh fine = build_uniform_triangulation(8);
  const DGSpace sc(coarse, 1), sf(fine, 1);
  const double cc = stabilization_C11(coarse.edges[0], cfg, sc);
  const double cf = stabilization_C11(fine.edges[0], cfg, sf);
  CHECK(cf == doctest::Approx(2.0 * cc).epsilon(1e-13));
}

TEST_CASE("mass matrices are identities for the orthonormal basis, A = I") {
  const Mesh mesh = build_uniform_triangulation(2);
  for (int p : {1, 3}) {
    const DGSpace space(mesh, p);
    SystemMatrices mats;
    assemble_masses(space, identity_coeffs(), mats);
    CHECK(max_abs_diff(mats.M_scalar,
                       Eigen::MatrixXd::Identity(space.num_scalar_dofs(),
                                                 space.num_scalar_dofs())) <= 1e-12);
    CHECK(max_abs_diff(mats.M_vector,
                       Eigen::MatrixXd::Identity(space.num_vector_dofs(),
                                                 space.num_vector_dofs())) <= 1e-12);
    CHECK((Eigen::MatrixXd(mats.A2) - Eigen::MatrixXd(mats.M_vector))
              .cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("A2 reproduces the block pattern of a constant anisotropic A") {
  const Mesh mesh = build_uniform_triangulation(2);
  const DGSpace space(mesh, 2);
  Eigen::Matrix2d A;
  A << 3.0, 0.5, 0.5, 2.0;
  ProblemCoefficients coeffs = identity_coeffs();
  coeffs.A = [A](const Eigen::Vector2d&) { return A; };
  SystemMatrices mats;
  assemble_masses(space, coeffs, mats);

  const int nloc = space.ndof_local();
  const Eigen::MatrixXd A2 = Eigen::MatrixXd(mats.A2);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const int vo = space.vector_offset(e);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(nloc, nloc);
    CHECK((A2.block(vo, vo, nloc, nloc) - A(0, 0) * I).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((A2.block(vo, vo + nloc, nloc, nloc) - A(0, 1) * I).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((A2.block(vo + nloc, vo, nloc, nloc) - A(1, 0) * I).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((A2.block(vo + nloc, vo + nloc, nloc, nloc) - A(1, 1) * I).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // quadratic form against a quadrature oracle on random vectors
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd q(space.num_vector_dofs());
  for (int i = 0; i < q.size(); ++i) q(i) = dist(rng);
  FieldCoeffs field{&space, FieldKind::Vector, q};
  const TriangleRule rule = triangle_rule(space.degree() + 4);
  double oracle = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int qq = 0; qq < rule.size(); ++qq) {
      const Eigen::Vector2d ref = rule.points.row(qq).transpose();
      const Eigen::Vector2d w = space.eval_field_vector(field, e, ref);
      oracle += rule.weights(qq) * space.jacobian_det(e) * w.dot(A * w);
    }
  CHECK(q.dot(mats.A2 * q) == doctest::Approx(oracle).epsilon(1e-11));
}

TEST_CASE("ellipticity violation is reported with a location") {
  const Mesh mesh = build_uniform_triangulation(1);
  const DGSpace space(mesh, 1);
  ProblemCoefficients coeffs = identity_coeffs();
  coeffs.A = [](const Eigen::Vector2d&) {
    return (Eigen::Matrix2d() << 0.5, 0.0, 0.0, 2.0).finished();
  };
  coeffs.alpha_ellipticity = 1.0;
  SystemMatrices mats;
  CHECK_THROWS_WITH_AS(assemble_masses(space, coeffs, mats),
                       doctest::Contains("ellipticity"), std::runtime_error);
}

TEST_CASE("mixed form matches its integration-by-parts twin") {
  for (const auto& [c11, c22] : {std::pair<const char*, const char*>{"one", "zero"},
                                 {"one", "one"},
                                 {"inv-h", "h"}}) {
    StabilizationConfig cfg;
    cfg.alpha_exp = std::string(c11) == "inv-h" ? -1.0 : 0.0;
    if (std::string(c22) == "zero") {
      cfg.kappa = 0.0;
    } else {
      cfg.kappa = 1.0;
      cfg.beta_exp = std::string(c22) == "h" ? 1.0 : 0.0;
    }
    for (int n : {1, 2, 4}) {
      const Mesh mesh = build_uniform_triangulation(n);
      for (int p : {1, 2, 3}) {
        const DGSpace space(mesh, p);
        const SparseMat primal = assemble_A1(space, cfg);
        const Eigen::MatrixXd twin = ldg_test::assemble_A1_ibp(space, cfg);
        CHECK(max_abs_diff(primal, twin) <= 1e-10);
      }
    }
  }
}

TEST_CASE("J quadratic form on the unit-jump witness") {
  const Mesh mesh = build_uniform_triangulation(1);
  const DGSpace space(mesh, 1);
  StabilizationConfig cfg;  // C11 = 1 on every edge
  SystemMatrices mats;
  assemble_penalties(space, cfg, mats);

  // v = 1 on element 0, v = 0 on element 1: unit jump on the diagonal edge
  // (length sqrt 2) and unit boundary trace on two unit edges
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space.num_scalar_dofs());
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  space.eval_basis(0, Eigen::Vector2d(0.25, 0.25), vals, grads);
  v(space.scalar_offset(0)) = 1.0 / vals(0);  // makes the field equal 1

  CHECK(v.dot(mats.J * v) ==
        doctest::Approx(std::sqrt(2.0) + 2.0).epsilon(1e-12));
}

TEST_CASE("J1 quadratic form on a constant one-sided vector witness") {
  const Mesh mesh = build_uniform_triangulation(1);
  const DGSpace space(mesh, 1);
  StabilizationConfig cfg;
  cfg.kappa = 2.0;  // C22 = 2 with beta = 0
  SystemMatrices mats;
  assemble_penalties(space, cfg, mats);

  // p = (1,0) on element 0, zero on element 1; only the diagonal edge
  // contributes: |[[p]]| = |nu_x| = 1/sqrt(2), length sqrt(2)
  Eigen::VectorXd q = Eigen::VectorXd::Zero(space.num_vector_dofs());
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  space.eval_basis(0, Eigen::Vector2d(0.25, 0.25), vals, grads);
  q(space.vector_offset(0)) = 1.0 / vals(0);

  const double expected = 2.0 * std::sqrt(2.0) * 0.5;  // c22 * len * (1/sqrt2)^2
  CHECK(q.dot(mats.J1 * q) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("kappa = 0 yields an identically zero J1") {
  const Mesh mesh = build_uniform_triangulation(2);
  const DGSpace space(mesh, 2);
  StabilizationConfig cfg;
  cfg.kappa = 0.0;
  SystemMatrices mats;
  assemble_penalties(space, cfg, mats);
  CHECK(Eigen::MatrixXd(mats.J1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernel mass fast path agrees with the general assembly") {
  const Mesh mesh = build_uniform_triangulation(2);
  const DGSpace space(mesh, 2);
  ProblemCoefficients fast = identity_coeffs();
  ProblemCoefficients general = identity_coeffs();
  general.kernel_scalar = nullptr;
  general.B = [](const Eigen::Vector2d&, double t, double s) {
    return Eigen::Matrix2d(std::exp(t - s) * Eigen::Matrix2d::Identity());
  };
  const double t = 0.9, s = 0.35;
  const SparseMat mf = assemble_kernel_mass(space, fast, t, s);
  const SparseMat mg = assemble_kernel_mass(space, general, t, s);
  CHECK((Eigen::MatrixXd(mf) - Eigen::MatrixXd(mg)).cwiseAbs().maxCoeff() <= 1e-12);

  // scalar kernel is a multiple of the plain vector mass
  const SparseMat mv = assemble_vector_mass(space);
  CHECK((Eigen::MatrixXd(mf) - std::exp(t - s) * Eigen::MatrixXd(mv))
            .cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("load vector equals the projection coefficients of f") {
  const Mesh mesh = build_uniform_triangulation(2);
  const DGSpace space(mesh, 2);
  ProblemCoefficients coeffs = identity_coeffs();
  coeffs.f = [](const Eigen::Vector2d& x, double t) {
    return (1.0 + t) * x.x() * x.y();
  };
  const double t = 0.7;
  const Eigen::VectorXd L = assemble_load(space, coeffs, t);
  const FieldCoeffs pf = space.l2_project(
      [&](const Eigen::Vector2d& x) { return coeffs.f(x, t); });
  // with an orthonormal basis, int f phi_i is exactly the projection coeff
  CHECK((L - pf.values).cwiseAbs().maxCoeff() <= 1e-13);
}
