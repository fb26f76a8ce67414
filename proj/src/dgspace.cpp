#include "ldg/dgspace.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

namespace ldg {

DGSpace::DGSpace(const Mesh& mesh, int degree)
    : mesh_(&mesh),
      degree_(degree),
      basis_(degree),
      volume_rule_(triangle_rule(degree + 2)),
      edge_rule_(gauss_legendre(degree + 2)) {
  if (degree < 1) throw std::invalid_argument("DGSpace: degree >= 1 required");

  const int ne = mesh.num_elements();
  jac_.resize(ne);
  jac_inv_.resize(ne);
  det_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const auto& t = mesh.elements[e];
    Eigen::Matrix2d J;
    J.col(0) = mesh.vertices[t[1]] - mesh.vertices[t[0]];
    J.col(1) = mesh.vertices[t[2]] - mesh.vertices[t[0]];
    jac_[e] = J;
    det_[e] = J.determinant();
    jac_inv_[e] = J.inverse();
  }

  const int nq = volume_rule_.size();
  const int nloc = basis_.size();
  qp_values_.resize(nq, nloc);
  qp_grads_flat_.resize(nq * nloc, 2);
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  for (int q = 0; q < nq; ++q) {
    basis_.eval(volume_rule_.points.row(q).transpose(), vals, grads);
    qp_values_.row(q) = vals.transpose();
    qp_grads_flat_.middleRows(q * nloc, nloc) = grads;
  }
}

double DGSpace::edge_degree(int edge) const {
  // uniform degree per run; the averaged formula is kept for the record
  const Edge& e = mesh_->edges[edge];
  return e.is_boundary() ? degree_ : 0.5 * (degree_ + degree_);
}

Eigen::Vector2d DGSpace::to_physical(int elem, const Eigen::Vector2d& ref) const {
  const auto& t = mesh_->elements[elem];
  return mesh_->vertices[t[0]] + jac_[elem] * ref;
}

Eigen::Vector2d DGSpace::to_reference(int elem, const Eigen::Vector2d& phys) const {
  const auto& t = mesh_->elements[elem];
  return jac_inv_[elem] * (phys - mesh_->vertices[t[0]]);
}

void DGSpace::eval_basis(int elem, const Eigen::Vector2d& ref,
                         Eigen::VectorXd& values,
                         Eigen::Matrix<double, Eigen::Dynamic, 2>& grads) const {
  if (elem < 0 || elem >= mesh_->num_elements())
    throw std::out_of_range("DGSpace::eval_basis: element index out of range");
  basis_.eval(ref, values, grads);
  const double scale = 1.0 / std::sqrt(det_[elem]);
  values *= scale;
  grads = (grads * jac_inv_[elem]) * scale;  // physical grad = J^{-T} ref grad
}

FieldCoeffs DGSpace::l2_project(const ScalarField& f) const {
  FieldCoeffs c{this, FieldKind::Scalar, Eigen::VectorXd::Zero(num_scalar_dofs())};
  const int nloc = ndof_local();
  for (int e = 0; e < mesh_->num_elements(); ++e) {
    const double sqrt_det = std::sqrt(det_[e]);
    Eigen::VectorXd local = Eigen::VectorXd::Zero(nloc);
    for (int q = 0; q < volume_rule_.size(); ++q) {
      const Eigen::Vector2d x =
          to_physical(e, volume_rule_.points.row(q).transpose());
      // physical basis = ref/sqrt(det), physical measure = det * w_q
      local += (volume_rule_.weights(q) * sqrt_det * f(x)) *
               qp_values_.row(q).transpose();
    }
    c.values.segment(scalar_offset(e), nloc) = local;
  }
  return c;
}

FieldCoeffs DGSpace::l2_project(const VectorField& f) const {
  FieldCoeffs c{this, FieldKind::Vector, Eigen::VectorXd::Zero(num_vector_dofs())};
  const int nloc = ndof_local();
  for (int e = 0; e < mesh_->num_elements(); ++e) {
    const double sqrt_det = std::sqrt(det_[e]);
    Eigen::VectorXd lx = Eigen::VectorXd::Zero(nloc), ly = lx;
    for (int q = 0; q < volume_rule_.size(); ++q) {
      const Eigen::Vector2d x =
          to_physical(e, volume_rule_.points.row(q).transpose());
      const Eigen::Vector2d v = f(x);
      const double wq = volume_rule_.weights(q) * sqrt_det;
      lx += (wq * v.x()) * qp_values_.row(q).transpose();
      ly += (wq * v.y()) * qp_values_.row(q).transpose();
    }
    c.values.segment(vector_offset(e), nloc) = lx;
    c.values.segment(vector_offset(e) + nloc, nloc) = ly;
  }
  return c;
}

double DGSpace::eval_field(const FieldCoeffs& coeffs, int elem,
                           const Eigen::Vector2d& ref) const {
  if (coeffs.space != this || coeffs.kind != FieldKind::Scalar)
    throw std::invalid_argument("eval_field: scalar coefficients of this space required");
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  eval_basis(elem, ref, vals, grads);
  return coeffs.values.segment(scalar_offset(elem), ndof_local()).dot(vals);
}

Eigen::Vector2d DGSpace::eval_field_vector(const FieldCoeffs& coeffs, int elem,
                                           const Eigen::Vector2d& ref) const {
  if (coeffs.space != this || coeffs.kind != FieldKind::Vector)
    throw std::invalid_argument("eval_field_vector: vector coefficients of this space required");
  Eigen::VectorXd vals;
  Eigen::Matrix<double, Eigen::Dynamic, 2> grads;
  eval_basis(elem, ref, vals, grads);
  const int nloc = ndof_local();
  return {coeffs.values.segment(vector_offset(elem), nloc).dot(vals),
          coeffs.values.segment(vector_offset(elem) + nloc, nloc).dot(vals)};
}

double DGSpace::l2_error(const FieldCoeffs& coeffs, const ScalarField& exact) const {
  if (coeffs.space != this || coeffs.kind != FieldKind::Scalar)
    throw std::invalid_argument("l2_error: scalar coefficients of this space required");
  const int nloc = ndof_local();
  double err2 = 0.0;
  for (int e = 0; e < mesh_->num_elements(); ++e) {
    const double sqrt_det = std::sqrt(det_[e]);
    const auto local = coeffs.values.segment(scalar_offset(e), nloc);
    for (int q = 0; q < volume_rule_.size(); ++q) {
      const Eigen::Vector2d x =
          to_physical(e, volume_rule_.points.row(q).transpose());
      const double uh = qp_values_.row(q).dot(local) / sqrt_det;
      const double d = exact(x) - uh;
      err2 += volume_rule_.weights(q) * det_[e] * d * d;
    }
  }
  return std::sqrt(err2);
}

double DGSpace::l2_error(const FieldCoeffs& coeffs, const VectorField& exact) const {
  if (coeffs.space != this || coeffs.kind != FieldKind::Vector)
    throw std::invalid_argument("l2_error: vector coefficients of this space required");
  const int nloc = ndof_local();
  double err2 = 0.0;
  for (int e = 0; e < mesh_->num_elements(); ++e) {
    const double sqrt_det = std::sqrt(det_[e]);
    const auto lx = coeffs.values.segment(vector_offset(e), nloc);
    const auto ly = coeffs.values.segment(vector_offset(e) + nloc, nloc);
    for (int q = 0; q < volume_rule_.size(); ++q) {
      const Eigen::Vector2d x =
          to_physical(e, volume_rule_.points.row(q).transpose());
      const Eigen::Vector2d wh(qp_values_.row(q).dot(lx) / sqrt_det,
                               qp_values_.row(q).dot(ly) / sqrt_det);
      err2 += volume_rule_.weights(q) * det_[e] * (exact(x) - wh).squaredNorm();
    }
  }
  return std::sqrt(err2);
}

}  // namespace ldg
