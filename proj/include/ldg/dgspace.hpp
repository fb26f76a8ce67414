#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "ldg/basis.hpp"
#include "ldg/mesh.hpp"
#include "ldg/quadrature.hpp"

namespace ldg {

using ScalarField = std::function<double(const Eigen::Vector2d&)>;
using VectorField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

enum class FieldKind { Scalar, Vector };

class DGSpace;

// Coefficient vector of a discrete scalar (length N_h) or vector (length
// M_h) field. Vector dofs of element e are laid out as [x-block | y-block].
struct FieldCoeffs {
  const DGSpace* space = nullptr;
  FieldKind kind = FieldKind::Scalar;
  Eigen::VectorXd values;
};

// Broken polynomial spaces V_h and W_h on a triangulation: per-element
// orthonormal basis (so the scalar and vector mass matrices are the
// identity), quadrature caches and the global dof layout.
class DGSpace {
 public:
  DGSpace(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int ndof_local() const { return basis_.size(); }
  int num_scalar_dofs() const { return mesh_->num_elements() * ndof_local(); }
  int num_vector_dofs() const { return 2 * num_scalar_dofs(); }
  int scalar_offset(int elem) const { return elem * ndof_local(); }
  int vector_offset(int elem) const { return 2 * elem * ndof_local(); }
  double edge_degree(int edge) const;  // p_k = (p_i+p_j)/2

  const ReferenceBasis& basis() const { return basis_; }
  const TriangleRule& volume_rule() const { return volume_rule_; }
  const QuadRule1D& edge_rule() const { return edge_rule_; }

  // affine geometry of one element
  double jacobian_det(int elem) const { return det_[elem]; }  // = 2*area
  Eigen::Vector2d to_physical(int elem, const Eigen::Vector2d& ref) const;
  Eigen::Vector2d to_reference(int elem, const Eigen::Vector2d& phys) const;

  // basis values and physical-coordinate gradients at a reference point
  void eval_basis(int elem, const Eigen::Vector2d& ref, Eigen::VectorXd& values,
                  Eigen::Matrix<double, Eigen::Dynamic, 2>& grads) const;

  // cached traces at the volume rule: values are element-independent up to
  // the 1/sqrt(det) scaling, which these accessors fold in
  const Eigen::MatrixXd& ref_values_at_quad() const { return qp_values_; }

  FieldCoeffs l2_project(const ScalarField& f) const;
  FieldCoeffs l2_project(const VectorField& f) const;

  double eval_field(const FieldCoeffs& coeffs, int elem,
                    const Eigen::Vector2d& ref) const;
  Eigen::Vector2d eval_field_vector(const FieldCoeffs& coeffs, int elem,
                                    const Eigen::Vector2d& ref) const;

  double l2_error(const FieldCoeffs& coeffs, const ScalarField& exact) const;
  double l2_error(const FieldCoeffs& coeffs, const VectorField& exact) const;

 private:
  const Mesh* mesh_;
  int degree_;
  ReferenceBasis basis_;
  TriangleRule volume_rule_;
  QuadRule1D edge_rule_;
  std::vector<Eigen::Matrix2d> jac_;      // columns v1-v0, v2-v0
  std::vector<Eigen::Matrix2d> jac_inv_;
  std::vector<double> det_;
  Eigen::MatrixXd qp_values_;                       // nq x nloc, reference scaling
  Eigen::Matrix<double, Eigen::Dynamic, 2> qp_grads_flat_;  // (nq*nloc) x 2
};

}  // namespace ldg
