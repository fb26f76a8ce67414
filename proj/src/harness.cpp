#include "ldg/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "ldg/stepper.hpp"

namespace ldg {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

ManufacturedProblem build_manufactured() {
  ManufacturedProblem mp;
  auto w = [](const Eigen::Vector2d& x) {
    return std::sin(kPi * x.x()) * std::sin(kPi * x.y());
  };
  auto grad_w = [](const Eigen::Vector2d& x) {
    return Eigen::Vector2d(kPi * std::cos(kPi * x.x()) * std::sin(kPi * x.y()),
                           kPi * std::sin(kPi * x.x()) * std::cos(kPi * x.y()));
  };

  mp.exact_u = [w](const Eigen::Vector2d& x, double t) {
    return std::exp(t) * w(x);
  };
  mp.exact_grad = [grad_w](const Eigen::Vector2d& x, double t) {
    return Eigen::Vector2d(std::exp(t) * grad_w(x));
  };
  // sigma = grad u + int_0^t e^{t-s} grad u(s) ds = (1+t) e^t grad w
  mp.exact_sigma = [grad_w](const Eigen::Vector2d& x, double t) {
    return Eigen::Vector2d((1.0 + t) * std::exp(t) * grad_w(x));
  };

  mp.coeffs.A = [](const Eigen::Vector2d&) { return Eigen::Matrix2d::Identity(); };
  mp.coeffs.B = [](const Eigen::Vector2d&, double t, double s) {
    return Eigen::Matrix2d(std::exp(t - s) * Eigen::Matrix2d::Identity());
  };
  mp.coeffs.kernel_scalar = [](double tau) { return std::exp(tau); };
  mp.coeffs.B_stationary = true;
  // u_tt - div sigma = e^t w + 2 pi^2 (1+t) e^t w
  mp.coeffs.f = [w](const Eigen::Vector2d& x, double t) {
    return std::exp(t) * w(x) * (1.0 + 2.0 * kPi * kPi * (1.0 + t));
  };
  mp.coeffs.u0 = [w](const Eigen::Vector2d& x) { return w(x); };
  mp.coeffs.grad_u0 = [grad_w](const Eigen::Vector2d& x) { return grad_w(x); };
  mp.coeffs.u1 = [w](const Eigen::Vector2d& x) { return w(x); };
  mp.coeffs.alpha_ellipticity = 1.0;
  mp.coeffs.M_bound = std::exp(1.0);
  return mp;
}

std::array<double, 4> predicted_rates(const StabilizationConfig& cfg, int p,
                                      int r) {
  const double mu_s = cfg.mu_star();
  const double mu_u = cfg.mu_sub();
  const double P = std::min(r + 0.5 * (1.0 + mu_u), p + 0.5 * (1.0 - mu_s));
  const double D = 0.5 * (1.0 + mu_u);
  const double R = r + std::min(mu_u, 1.0 - mu_s);
  const double S = std::min(0.5, mu_u);
  return {P, D, R, S};
}

StabilizationConfig make_regime(const std::string& c11, const std::string& c22) {
  StabilizationConfig cfg;
  if (c11 == "one")
    cfg.alpha_exp = 0.0;
  else if (c11 == "inv-h")
    cfg.alpha_exp = -1.0;
  else
    throw std::invalid_argument("make_regime: unknown C11 regime '" + c11 +
                                "' (use one, inv-h)");
  if (c22 == "zero") {
    cfg.kappa = 0.0;
    cfg.beta_exp = 0.0;
  } else if (c22 == "one") {
    cfg.kappa = 1.0;
    cfg.beta_exp = 0.0;
  } else if (c22 == "h") {
    cfg.kappa = 1.0;
    cfg.beta_exp = 1.0;
  } else {
    throw std::invalid_argument("make_regime: unknown C22 regime '" + c22 +
                                "' (use zero, one, h)");
  }
  return cfg;
}

std::string regime_name(const StabilizationConfig& cfg) {
  std::string c11 = cfg.alpha_exp == 0.0 ? "one" : "inv-h";
  std::string c22 = cfg.kappa == 0.0 ? "zero" : (cfg.beta_exp == 0.0 ? "one" : "h");
  return "c11-" + c11 + "-c22-" + c22;
}

double time_step_rule(double h, int degree) {
  return std::min(0.5 * h, std::pow(h, 0.5 * (degree + 1)));
}

SolveResult run_single_solve(const ManufacturedProblem& problem,
                             const SolveConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();

  const Mesh mesh = build_uniform_triangulation(config.mesh_n);
  const DGSpace space(mesh, config.degree);
  const SystemMatrices mats =
      assemble_system(space, problem.coeffs, config.stab);

  double k = config.k > 0.0 ? config.k
                            : time_step_rule(mesh.mesh_size, config.degree);
  const int N = std::max(1, static_cast<int>(std::ceil(config.t_final / k - 1e-12)));
  const TimeGrid grid(config.t_final / N, N);

  Stepper stepper(space, mats, problem.coeffs, config.stab, grid);
  const bool dump = !config.dump_dir.empty();
  if (dump) std::filesystem::create_directories(config.dump_dir);
  while (stepper.state().n < grid.N) {
    stepper.advance();
    if (dump) {
      std::ofstream out(config.dump_dir + "/state_" +
                        std::to_string(stepper.state().n) + ".txt");
      stepper.dump_state(out);
    }
  }

  SolveResult res;
  res.h = mesh.mesh_size;
  res.k = grid.k;

  FieldCoeffs U{&space, FieldKind::Scalar, stepper.state().alpha_curr};
  auto exact_u = problem.exact_u;
  res.e_U = space.l2_error(U, [&exact_u, &grid](const Eigen::Vector2d& x) {
    return exact_u(x, grid.T);
  });

  FieldCoeffs Z{&space, FieldKind::Vector, stepper.state().gamma_half_prev};
  const double t_half = grid.t_half(grid.N - 1);
  auto exact_sigma = problem.exact_sigma;
  res.e_Z = space.l2_error(Z, [&exact_sigma, t_half](const Eigen::Vector2d& x) {
    return Eigen::Vector2d(exact_sigma(x, t_half));
  });

  res.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

ErrorReport run_convergence_study(const ManufacturedProblem& problem,
                                  const StudyConfig& config) {
  ErrorReport report;
  report.regime = regime_name(config.stab);
  for (int p : config.degrees) {
    const auto rates = predicted_rates(config.stab, p, config.regularity);
    report.predicted_u_order.push_back(rates[0] + rates[1]);
    report.predicted_flux_order.push_back(rates[0]);

    double prev_eU = 0.0, prev_eZ = 0.0;
    double eoc_U = 0.0, eoc_Z = 0.0;
    for (size_t li = 0; li < config.levels.size(); ++li) {
      SolveConfig sc;
      sc.mesh_n = config.levels[li];
      sc.degree = p;
      sc.stab = config.stab;
      sc.t_final = config.t_final;
      LevelRecord rec;
      rec.degree = p;
      rec.level = config.levels[li];
      rec.result = run_single_solve(problem, sc);
      if (li > 0) {
        eoc_U = std::log2(prev_eU / rec.result.e_U);
        eoc_Z = std::log2(prev_eZ / rec.result.e_Z);
        rec.eoc_U = eoc_U;
        rec.eoc_Z = eoc_Z;
      }
      prev_eU = rec.result.e_U;
      prev_eZ = rec.result.e_Z;
      report.records.push_back(rec);
    }
    report.final_eoc_U.push_back(eoc_U);
    report.final_eoc_Z.push_back(eoc_Z);
  }
  return report;
}

void write_csv(const ErrorReport& report, std::ostream& out) {
  out << "# e_Z is reported at t_{N-1/2}, the last half step of the scheme\n";
  out << "regime,p,level,h,k,e_U,eoc_U,e_Z,eoc_Z,predicted_u_order,"
         "predicted_flux_order,wall_time_s\n";
  size_t di = 0;
  int last_degree = report.records.empty() ? 0 : report.records.front().degree;
  for (const auto& rec : report.records) {
    if (rec.degree != last_degree) {
      ++di;
      last_degree = rec.degree;
    }
    out << report.regime << "," << rec.degree << "," << rec.level << ","
        << num6(rec.result.h) << "," << num6(rec.result.k) << ","
        << num6(rec.result.e_U) << "," << num6(rec.eoc_U) << ","
        << num6(rec.result.e_Z) << "," << num6(rec.eoc_Z) << ","
        << num6(report.predicted_u_order[di]) << ","
        << num6(report.predicted_flux_order[di]) << ","
        << num6(rec.result.wall_time_s) << "\n";
  }
}

}  // namespace ldg
