#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "ldg/harness.hpp"
#include "ldg/stepper.hpp"

using namespace ldg;

namespace {

ProblemCoefficients zero_coeffs() {
  ProblemCoefficients c;
  c.A = [](const Eigen::Vector2d&) { return Eigen::Matrix2d::Identity(); };
  c.kernel_scalar = [](double tau) { return std::exp(tau); };
  c.B_stationary = true;
  c.f = [](const Eigen::Vector2d&, double) { return 0.0; };
  c.u0 = [](const Eigen::Vector2d&) { return 0.0; };
  c.u1 = [](const Eigen::Vector2d&) { return 0.0; };
  return c;
}

}  // namespace

TEST_CASE("init_state projects the initial data") {
  const ManufacturedProblem mp = build_manufactured();
  const Mesh mesh = build_uniform_triangulation(4);
  const DGSpace space(mesh, 2);
  SystemMatrices mats;  // init_state does not need assembled operators
  const TimeState s = init_state(space, mats, mp.coeffs);

  CHECK(s.n == 0);
  const FieldCoeffs alpha{&space, FieldKind::Scalar, s.alpha_curr};
  auto u0 = mp.coeffs.u0;
  CHECK(space.l2_error(alpha, u0) <= 0.05);  // projection error only

  // A = I makes gamma^0 coincide with beta^0
  CHECK((s.gamma0 - s.beta0).cwiseAbs().maxCoeff() <= 1e-13);

  // u1 = u0 for this problem
  CHECK((s.u1_coeffs - s.alpha_curr).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("finite-difference gradient fallback matches the analytic gradient") {
  const ManufacturedProblem mp = build_manufactured();
  const Mesh mesh = build_uniform_triangulation(2);
  const DGSpace space(mesh, 2);
  SystemMatrices mats;
  const TimeState exact = init_state(space, mats, mp.coeffs);

  ProblemCoefficients no_grad = mp.coeffs;
  no_grad.grad_u0 = nullptr;
  const TimeState fd = init_state(space, mats, no_grad);
  CHECK((fd.beta0 - exact.beta0).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((fd.gamma0 - exact.gamma0).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("zero data stays identically zero") {
  const Mesh mesh = build_uniform_triangulation(2);
  const DGSpace space(mesh, 1);
  StabilizationConfig cfg;
  const ProblemCoefficients coeffs = zero_coeffs();
  const SystemMatrices mats = assemble_system(space, coeffs, cfg);
  Stepper stepper(space, mats, coeffs, cfg, TimeGrid(0.1, 5));
  stepper.run();
  CHECK(stepper.state().alpha_curr.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(stepper.state().beta_half_prev.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(stepper.energy_norm() <= 1e-12);
}

TEST_CASE("block residuals stay at solver precision") {
  const ManufacturedProblem mp = build_manufactured();
  const Mesh mesh = build_uniform_triangulation(4);
  const DGSpace space(mesh, 2);
  StabilizationConfig cfg;
  cfg.kappa = 0.0;
  const SystemMatrices mats = assemble_system(space, mp.coeffs, cfg);
  Stepper stepper(space, mats, mp.coeffs, cfg, TimeGrid(0.05, 6));
  for (int n = 0; n < 6; ++n) {
    stepper.advance();
    CHECK(stepper.last_residuals().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("full-step update is the reflection of the half step") {
  const ManufacturedProblem mp = build_manufactured();
  const Mesh mesh = build_uniform_triangulation(2);
  const DGSpace space(mesh, 1);
  StabilizationConfig cfg;
  const SystemMatrices mats = assemble_system(space, mp.coeffs, cfg);
  Stepper stepper(space, mats, mp.coeffs, cfg, TimeGrid(0.1, 3));
  stepper.run();
  const TimeState& s = stepper.state();
  // alpha^{n+1} = 2 alpha^{n+1/2} - alpha^n with alpha^n stored as prev
  CHECK((s.alpha_curr - (2.0 * s.alpha_half_prev - s.alpha_prev))
            .cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("history records one half-step field per level") {
  const ManufacturedProblem mp = build_manufactured();
  const Mesh mesh = build_uniform_triangulation(2);
  const DGSpace space(mesh, 1);
  StabilizationConfig cfg;
  const SystemMatrices mats = assemble_system(space, mp.coeffs, cfg);
  Stepper stepper(space, mats, mp.coeffs, cfg, TimeGrid(0.1, 4));
  stepper.run();
  CHECK(stepper.state().history.size() == 4);
  CHECK((stepper.state().history.beta_half(3) - stepper.state().beta_half_prev)
            .norm() == 0.0);
  CHECK(stepper.state().energy_log.size() == 4);
  CHECK_THROWS_AS(stepper.advance(), std::runtime_error);
}

TEST_CASE("stepper rejects an empty time grid") {
  const ManufacturedProblem mp = build_manufactured();
  const Mesh mesh = build_uniform_triangulation(1);
  const DGSpace space(mesh, 1);
  StabilizationConfig cfg;
  const SystemMatrices mats = assemble_system(space, mp.coeffs, cfg);
  CHECK_THROWS_AS(Stepper(space, mats, mp.coeffs, cfg, TimeGrid(0.0, 0)),
                  std::invalid_argument);
}

TEST_CASE("free oscillation keeps the energy norm bounded") {
  // no source, smooth initial data: the damped scheme must not grow
  ProblemCoefficients coeffs = zero_coeffs();
  coeffs.u0 = [](const Eigen::Vector2d& x) {
    return std::sin(std::numbers::pi * x.x()) * std::sin(std::numbers::pi * x.y());
  };
  const Mesh mesh = build_uniform_triangulation(4);
  const DGSpace space(mesh, 1);
  StabilizationConfig cfg;
  const SystemMatrices mats = assemble_system(space, coeffs, cfg);
  Stepper stepper(space, mats, coeffs, cfg, TimeGrid(0.05, 20));
  stepper.run();
  const auto& log = stepper.state().energy_log;
  double emax = 0.0;
  for (double e : log) emax = std::max(emax, e);
  CHECK(log.front() > 0.0);
  CHECK(emax <= 10.0 * log.front());
}

TEST_CASE("dump_state emits the named blocks") {
  const ManufacturedProblem mp = build_manufactured();
  const Mesh mesh = build_uniform_triangulation(1);
  const DGSpace space(mesh, 1);
  StabilizationConfig cfg;
  const SystemMatrices mats = assemble_system(space, mp.coeffs, cfg);
  Stepper stepper(space, mats, mp.coeffs, cfg, TimeGrid(0.1, 2));
  stepper.advance();
  std::ostringstream out;
  stepper.dump_state(out);
  const std::string text = out.str();
  CHECK(text.find("step 1") != std::string::npos);
  CHECK(text.find("alpha") != std::string::npos);
  CHECK(text.find("beta_half") != std::string::npos);
  CHECK(text.find("gamma_half") != std::string::npos);
}

TEST_CASE("marching tracks the manufactured solution on a coarse grid") {
  const ManufacturedProblem mp = build_manufactured();
  const Mesh mesh = build_uniform_triangulation(8);
  const DGSpace space(mesh, 2);
  StabilizationConfig cfg;
  cfg.kappa = 0.0;
  const SystemMatrices mats = assemble_system(space, mp.coeffs, cfg);
  const TimeGrid grid(0.025, 20);  // T = 0.5
  Stepper stepper(space, mats, mp.coeffs, cfg, grid);
  stepper.run();
  const FieldCoeffs U{&space, FieldKind::Scalar, stepper.state().alpha_curr};
  auto exact = mp.exact_u;
  const double err = space.l2_error(U, [&](const Eigen::Vector2d& x) {
    return exact(x, grid.T);
  });
  const double norm = std::exp(grid.T) * 0.5;  // ||u(T)|| = e^T / 2
  CHECK(err <= 0.02 * norm);
}
