#include "ldg/forms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldg {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Physical scalar basis traces of one element along an edge, one row per
// edge quadrature point.
Eigen::MatrixXd edge_traces(const DGSpace& space, const Edge& edge, int elem) {
  const Mesh& mesh = space.mesh();
  const Eigen::Vector2d a = mesh.vertices[edge.v[0]];
  const Eigen::Vector2d b = mesh.vertices[edge.v[1]];
  const QuadRule1D& rule = space.edge_rule();
  Eigen::MatrixXd traces(rule.size(), space.ndof_local());
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::Vector2d x = a + rule.points(q) * (b - a);
    space.eval_basis(elem, space.to_reference(elem, x), vals, grads);
    traces.row(q) = vals.transpose();
  }
  return traces;
}

double edge_weighted_product(const QuadRule1D& rule, double length,
                             const Eigen::MatrixXd& ti, int i,
                             const Eigen::MatrixXd& tj, int j) {
  double s = 0.0;
  for (int q = 0; q < rule.size(); ++q) s += rule.weights(q) * ti(q, i) * tj(q, j);
  return s * length;
}

double stab_value(const Edge& edge, const DGSpace& space, double factor,
                  double expo) {
  const Mesh& mesh = space.mesh();
  const double p = space.degree();
  auto ratio = [&](int elem) {
    return std::pow(mesh.element_diameters[elem] / (p * p), expo);
  };
  if (edge.is_boundary()) return factor * ratio(edge.left);
  return factor * std::min(ratio(edge.left), ratio(edge.right));
}

}  // namespace

void StabilizationConfig::validate() const {
  if (!(zeta > 0.0)) throw std::invalid_argument("stabilization: zeta must be positive");
  if (kappa < 0.0) throw std::invalid_argument("stabilization: kappa must be nonnegative");
  if (alpha_exp < -1.0 || alpha_exp > 0.0)
    throw std::invalid_argument("stabilization: alpha exponent outside [-1, 0]");
  if (beta_exp < 0.0 || beta_exp > 1.0)
    throw std::invalid_argument("stabilization: beta exponent outside [0, 1]");
}

double stabilization_C11(const Edge& edge, const StabilizationConfig& cfg,
                         const DGSpace& space) {
  return stab_value(edge, space, cfg.zeta, cfg.alpha_exp);
}

double stabilization_C22(const Edge& edge, const StabilizationConfig& cfg,
                         const DGSpace& space) {
  if (cfg.kappa == 0.0) return 0.0;
  return stab_value(edge, space, cfg.kappa, cfg.beta_exp);
}

void assemble_masses(const DGSpace& space, const ProblemCoefficients& coeffs,
                     SystemMatrices& out) {
  const int nloc = space.ndof_local();
  const int N = space.num_scalar_dofs();
  const int M = space.num_vector_dofs();
  const TriangleRule& rule = space.volume_rule();
  const Eigen::MatrixXd& ref_vals = space.ref_values_at_quad();

  Triplets ts, tv, ta;
  ts.reserve(N * nloc);
  tv.reserve(M * nloc);
  ta.reserve(2 * M * nloc);

  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nloc, nloc);
    Eigen::MatrixXd a11 = Eigen::MatrixXd::Zero(nloc, nloc), a12 = a11,
                    a21 = a11, a22 = a11;
    for (int q = 0; q < rule.size(); ++q) {
      // physical basis carries 1/sqrt(det), measure carries det
      const Eigen::Vector2d x = space.to_physical(e, rule.points.row(q).transpose());
      const Eigen::Matrix2d A = coeffs.A(x);
      const Eigen::Matrix2d As = 0.5 * (A + A.transpose());
      const double tr = As.trace();
      const double disc = std::sqrt(std::pow(As(0, 0) - As(1, 1), 2) +
                                    4.0 * As(0, 1) * As(0, 1));
      if (0.5 * (tr - disc) < coeffs.alpha_ellipticity - 1e-9)
        throw std::runtime_error(
            "assemble_masses: ellipticity bound violated at quadrature point (" +
            std::to_string(x.x()) + ", " + std::to_string(x.y()) + ") of element " +
            std::to_string(e));
      const Eigen::MatrixXd outer =
          rule.weights(q) * ref_vals.row(q).transpose() * ref_vals.row(q);
      mass += outer;
      a11 += A(0, 0) * outer;
      a12 += A(0, 1) * outer;
      a21 += A(1, 0) * outer;
      a22 += A(1, 1) * outer;
    }
    const int so = space.scalar_offset(e);
    const int vo = space.vector_offset(e);
    for (int i = 0; i < nloc; ++i) {
      for (int j = 0; j < nloc; ++j) {
        ts.emplace_back(so + i, so + j, mass(i, j));
        tv.emplace_back(vo + i, vo + j, mass(i, j));
        tv.emplace_back(vo + nloc + i, vo + nloc + j, mass(i, j));
        ta.emplace_back(vo + i, vo + j, a11(i, j));
        ta.emplace_back(vo + i, vo + nloc + j, a12(i, j));
        ta.emplace_back(vo + nloc + i, vo + j, a21(i, j));
        ta.emplace_back(vo + nloc + i, vo + nloc + j, a22(i, j));
      }
    }
  }
  out.M_scalar.resize(N, N);
  out.M_scalar.setFromTriplets(ts.begin(), ts.end());
  out.M_vector.resize(M, M);
  out.M_vector.setFromTriplets(tv.begin(), tv.end());
  out.A2.resize(M, M);
  out.A2.setFromTriplets(ta.begin(), ta.end());
}

SparseMat assemble_A1(const DGSpace& space, const StabilizationConfig& cfg) {
  const Mesh& mesh = space.mesh();
  const int nloc = space.ndof_local();
  const TriangleRule& vrule = space.volume_rule();
  const QuadRule1D& erule = space.edge_rule();
  Triplets trip;

  // volume part: int_K p . grad v
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    Eigen::MatrixXd gx = Eigen::MatrixXd::Zero(nloc, nloc), gy = gx;
    for (int q = 0; q < vrule.size(); ++q) {
      space.eval_basis(e, vrule.points.row(q).transpose(), vals, grads);
      const double wq = vrule.weights(q) * space.jacobian_det(e);
      // rows: scalar test i (gradient), cols: vector trial m (value)
      gx += wq * grads.col(0) * vals.transpose();
      gy += wq * grads.col(1) * vals.transpose();
    }
    const int so = space.scalar_offset(e);
    const int vo = space.vector_offset(e);
    for (int i = 0; i < nloc; ++i)
      for (int m = 0; m < nloc; ++m) {
        trip.emplace_back(so + i, vo + m, gx(i, m));
        trip.emplace_back(so + i, vo + nloc + m, gy(i, m));
      }
  }

  // edge part: -int ({{p}} - C12 [[p]]) . [[v]]
  for (const Edge& edge : mesh.edges) {
    const Eigen::Vector2d nu = edge.normal;
    const Eigen::MatrixXd tl = edge_traces(space, edge, edge.left);
    if (edge.is_boundary()) {
      // [[v]] = v nu, {{p}} = p, no C12 on the boundary
      const int so = space.scalar_offset(edge.left);
      const int vo = space.vector_offset(edge.left);
      for (int i = 0; i < nloc; ++i)
        for (int m = 0; m < nloc; ++m) {
          const double ip = edge_weighted_product(erule, edge.length, tl, i, tl, m);
          trip.emplace_back(so + i, vo + m, -ip * nu.x());
          trip.emplace_back(so + i, vo + nloc + m, -ip * nu.y());
        }
      continue;
    }
    const Eigen::MatrixXd tr = edge_traces(space, edge, edge.right);
    const double c12n = cfg.c12.dot(nu);
    const int elems[2] = {edge.left, edge.right};
    const Eigen::MatrixXd* traces[2] = {&tl, &tr};
    const double signs[2] = {1.0, -1.0};
    for (int si = 0; si < 2; ++si) {      // side of the scalar test function
      for (int ti = 0; ti < 2; ++ti) {    // side of the vector trial function
        const double factor = -signs[si] * (0.5 - c12n * signs[ti]);
        const int so = space.scalar_offset(elems[si]);
        const int vo = space.vector_offset(elems[ti]);
        for (int i = 0; i < nloc; ++i)
          for (int m = 0; m < nloc; ++m) {
            const double ip = edge_weighted_product(erule, edge.length,
                                                    *traces[si], i, *traces[ti], m);
            trip.emplace_back(so + i, vo + m, factor * ip * nu.x());
            trip.emplace_back(so + i, vo + nloc + m, factor * ip * nu.y());
          }
      }
    }
  }

  SparseMat A1(space.num_scalar_dofs(), space.num_vector_dofs());
  A1.setFromTriplets(trip.begin(), trip.end());
  return A1;
}

void assemble_penalties(const DGSpace& space, const StabilizationConfig& cfg,
                        SystemMatrices& out) {
  const Mesh& mesh = space.mesh();
  const int nloc = space.ndof_local();
  const QuadRule1D& erule = space.edge_rule();
  Triplets tj, tj1;

  for (const Edge& edge : mesh.edges) {
    const double c11 = stabilization_C11(edge, cfg, space);
    const double c22 = stabilization_C22(edge, cfg, space);
    const Eigen::Vector2d nu = edge.normal;
    const Eigen::MatrixXd tl = edge_traces(space, edge, edge.left);

    if (edge.is_boundary()) {
      const int so = space.scalar_offset(edge.left);
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
          tj.emplace_back(so + i, so + j,
                          c11 * edge_weighted_product(erule, edge.length, tl, i, tl, j));
      continue;  // J1 integrates over interior edges only
    }

    const Eigen::MatrixXd tr = edge_traces(space, edge, edge.right);
    const int elems[2] = {edge.left, edge.right};
    const Eigen::MatrixXd* traces[2] = {&tl, &tr};
    const double signs[2] = {1.0, -1.0};
    for (int si = 0; si < 2; ++si) {
      for (int ti = 0; ti < 2; ++ti) {
        const double orient = signs[si] * signs[ti];
        const int so_i = space.scalar_offset(elems[si]);
        const int so_j = space.scalar_offset(elems[ti]);
        const int vo_i = space.vector_offset(elems[si]);
        const int vo_j = space.vector_offset(elems[ti]);
        for (int i = 0; i < nloc; ++i)
          for (int j = 0; j < nloc; ++j) {
            const double ip = edge_weighted_product(erule, edge.length,
                                                    *traces[si], i, *traces[ti], j);
            tj.emplace_back(so_i + i, so_j + j, c11 * orient * ip);
            if (c22 != 0.0) {
              // [[p]] is the scalar normal jump, so components couple via nu
              for (int ci = 0; ci < 2; ++ci)
                for (int cj = 0; cj < 2; ++cj)
                  tj1.emplace_back(vo_i + ci * nloc + i, vo_j + cj * nloc + j,
                                   c22 * orient * nu(ci) * nu(cj) * ip);
            }
          }
      }
    }
  }

  out.J.resize(space.num_scalar_dofs(), space.num_scalar_dofs());
  out.J.setFromTriplets(tj.begin(), tj.end());
  out.J1.resize(space.num_vector_dofs(), space.num_vector_dofs());
  out.J1.setFromTriplets(tj1.begin(), tj1.end());
}

SystemMatrices assemble_system(const DGSpace& space,
                               const ProblemCoefficients& coeffs,
                               const StabilizationConfig& cfg) {
  cfg.validate();
  SystemMatrices out;
  assemble_masses(space, coeffs, out);
  out.A1 = assemble_A1(space, cfg);
  assemble_penalties(space, cfg, out);
  return out;
}

SparseMat assemble_vector_mass(const DGSpace& space) {
  const int nloc = space.ndof_local();
  const TriangleRule& rule = space.volume_rule();
  const Eigen::MatrixXd& ref_vals = space.ref_values_at_quad();
  Triplets trip;
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nloc, nloc);
    for (int q = 0; q < rule.size(); ++q)
      mass += rule.weights(q) * ref_vals.row(q).transpose() * ref_vals.row(q);
    const int vo = space.vector_offset(e);
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) {
        trip.emplace_back(vo + i, vo + j, mass(i, j));
        trip.emplace_back(vo + nloc + i, vo + nloc + j, mass(i, j));
      }
  }
  SparseMat out(space.num_vector_dofs(), space.num_vector_dofs());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMat assemble_kernel_mass(const DGSpace& space,
                               const ProblemCoefficients& coeffs, double t,
                               double s) {
  const int nloc = space.ndof_local();
  const TriangleRule& rule = space.volume_rule();
  const Eigen::MatrixXd& ref_vals = space.ref_values_at_quad();
  Triplets trip;

  if (coeffs.kernel_scalar) {
    return coeffs.kernel_scalar(t - s) * assemble_vector_mass(space);
  }
  {
    for (int e = 0; e < space.mesh().num_elements(); ++e) {
      Eigen::MatrixXd b11 = Eigen::MatrixXd::Zero(nloc, nloc), b12 = b11,
                      b21 = b11, b22 = b11;
      for (int q = 0; q < rule.size(); ++q) {
        const Eigen::Vector2d x = space.to_physical(e, rule.points.row(q).transpose());
        const Eigen::Matrix2d B = coeffs.B(x, t, s);
        const Eigen::MatrixXd outer =
            rule.weights(q) * ref_vals.row(q).transpose() * ref_vals.row(q);
        b11 += B(0, 0) * outer;
        b12 += B(0, 1) * outer;
        b21 += B(1, 0) * outer;
        b22 += B(1, 1) * outer;
      }
      const int vo = space.vector_offset(e);
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j) {
          // entry = int (B p_j) . w_i with p the trial function
          trip.emplace_back(vo + i, vo + j, b11(i, j));
          trip.emplace_back(vo + i, vo + nloc + j, b12(i, j));
          trip.emplace_back(vo + nloc + i, vo + j, b21(i, j));
          trip.emplace_back(vo + nloc + i, vo + nloc + j, b22(i, j));
        }
    }
  }

  SparseMat out(space.num_vector_dofs(), space.num_vector_dofs());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

Eigen::VectorXd assemble_load(const DGSpace& space,
                              const ProblemCoefficients& coeffs, double t) {
  const TriangleRule& rule = space.volume_rule();
  const Eigen::MatrixXd& ref_vals = space.ref_values_at_quad();
  const int nloc = space.ndof_local();
  Eigen::VectorXd L = Eigen::VectorXd::Zero(space.num_scalar_dofs());
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double sqrt_det = std::sqrt(space.jacobian_det(e));
    Eigen::VectorXd local = Eigen::VectorXd::Zero(nloc);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x = space.to_physical(e, rule.points.row(q).transpose());
      local += (rule.weights(q) * sqrt_det * coeffs.f(x, t)) *
               ref_vals.row(q).transpose();
    }
    L.segment(space.scalar_offset(e), nloc) = local;
  }
  return L;
}

}  // namespace ldg
