#pragma once

#include "liemetric/algebra.hpp"

#include <array>
#include <optional>
#include <vector>

namespace liemetric {

/// Levi-Civita connection of a metric Lie algebra, stored in an orthonormal
/// frame: gamma[i] is the matrix of nabla_{f_i}, with entry (k, j) equal to
/// <nabla_{f_i} f_j, f_k>.
struct Connection {
  Frame frame;
  LieAlgebra algebra;  ///< structure constants in `frame`
  std::vector<Matrix> gamma;
  Tolerance tol;

  int dim() const { return algebra.dim(); }
  /// nabla_x for a coordinate vector x in the orthonormal frame.
  Matrix along(const Vector& x) const;
  /// nabla_{e_a} for the a-th vector of the input basis, expressed in the input basis.
  Matrix in_input_frame(int a) const;
};

Connection levi_civita(const MetricLieAlgebra& mla);

/// max_i |gamma[i] + gamma[i]^T|.
double metric_residual(const Connection& conn);
/// max over i, j of |gamma[i] e_j - gamma[j] e_i - [e_i, e_j]|.
double torsion_residual(const Connection& conn);

/// Linear forms alpha(x) = <nabla_x e1, f1>, beta(x) = <nabla_x e2, f2> on a
/// 4-dimensional algebra with ordered orthonormal basis {e1, f1, e2, f2}.
struct ConnectionForms {
  std::array<double, 4> alpha{};
  std::array<double, 4> beta{};
};

/// Requires dim 4, H = blocks(rot(a1), rot(a2)) with |a1| != |a2| in the
/// connection frame, and reads alpha, beta off each gamma. Throws NotBlockForm
/// when H or some gamma[i] is not of the two-rotation-block shape.
ConnectionForms connection_form_decomposition(const Connection& conn, const Matrix& h);

/// The ten quadratic relations among alpha and beta, equivalent to the Jacobi
/// identity of the reconstructed bracket, plus their 2x2 matrix forms.
struct ConnectionFormRelations {
  std::array<double, 10> values{};  ///< in the order listed in relations()
  double det_u = 0.0;
  double det_v = 0.0;
  Eigen::Matrix2d ab = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d cd = Eigen::Matrix2d::Zero();
};

ConnectionFormRelations evaluate_relations(const ConnectionForms& forms);

/// Brackets on the orthonormal basis {e1, f1, e2, f2} determined by torsion
/// freeness of the block-form connection.
StructureConstants brackets_from_forms(const ConnectionForms& forms);

struct ConnectionFormBuild {
  ConnectionFormRelations relations;
  /// 1-based indices of relations whose residual exceeds the tolerance.
  std::vector<int> violated;
  bool matrix_forms_vanish = false;
  std::optional<MetricLieAlgebra> algebra;  ///< set iff violated is empty
};

/// Throws std::invalid_argument when alpha = beta = 0.
ConnectionFormBuild build_from_connection_forms(const ConnectionForms& forms,
                                                const Tolerance& tol = {});

/// 4x4 skew matrix blocks(rot(s), rot(t)) in the basis {e1, f1, e2, f2}.
Matrix two_block_rotation(double s, double t);

}  // namespace liemetric
