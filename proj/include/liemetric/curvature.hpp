#pragma once

#include "liemetric/connection.hpp"

#include <vector>

namespace liemetric {

/// operators[i * n + j] is the matrix of R(f_i, f_j) in the connection frame,
/// R(x, y) = nabla_x nabla_y - nabla_y nabla_x - nabla_[x,y].
struct CurvatureData {
  int n = 0;
  std::vector<Matrix> operators;

  const Matrix& at(int i, int j) const { return operators[static_cast<size_t>(i * n + j)]; }
  /// R(x, y) for coordinate vectors in the orthonormal frame.
  Matrix operator()(const Vector& x, const Vector& y) const;
  double max_abs() const;
};

struct RicciData {
  Matrix op;  ///< Ricci operator in the orthonormal frame
  double scalar = 0.0;
};

/// Throws FrameMismatch unless `algebra_frame` matches the connection frame.
CurvatureData curvature(const Connection& conn, const LieAlgebra& algebra,
                        const Frame& algebra_frame);
/// Uses the structure constants stored with the connection.
CurvatureData curvature(const Connection& conn);

/// Ric(j, k) = sum_i <R(f_i, f_j) f_k, f_i>.
RicciData ricci(const CurvatureData& curv);

/// K(x, y) = <R(x,y)y, x> / (|x|^2 |y|^2 - <x,y>^2). Throws DegeneratePlane.
double sectional(const CurvatureData& curv, const Vector& x, const Vector& y,
                 const Tolerance& tol = {});

// Identity residuals, all maxima over basis tuples.
double argument_antisymmetry_residual(const CurvatureData& curv);
double value_skew_residual(const CurvatureData& curv);
double bianchi_residual(const CurvatureData& curv);
double pair_symmetry_residual(const CurvatureData& curv);

}  // namespace liemetric
