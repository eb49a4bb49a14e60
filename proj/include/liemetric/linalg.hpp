#pragma once

// Dense helpers shared by every module: SVD-based rank decisions, canonical
// bases for subspaces, characteristic polynomials and the skew-matrix basis.

#include "liemetric/types.hpp"

#include <vector>

namespace liemetric::linalg {

/// Number of singular values above tol.threshold(sigma_max).
int numerical_rank(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis (as columns) of the column space of m.
Matrix column_space(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis (as columns) of the nullspace of m. A zero matrix has
/// full nullspace.
Matrix nullspace(const Matrix& m, const Tolerance& tol);

/// Canonical orthonormal basis of span(columns of basis): depends only on the
/// subspace, not on the particular spanning set. Built by Gram-Schmidt over the
/// projected standard coordinate vectors, taken in index order.
Matrix canonical_basis(const Matrix& basis, const Tolerance& tol);

/// Distance of v from span(q) where q has orthonormal columns.
double distance_to_span(const Matrix& q, const Vector& v);

/// max_i dist(b_i, span(q)) for the columns b_i of b.
double containment_residual(const Matrix& q, const Matrix& b);

/// Coefficients of det(xI - m), highest degree first; leading coefficient 1.
std::vector<double> charpoly(const Matrix& m);

double max_abs(const Matrix& m);

/// Index pairs (a, b), a < b, in lexicographic order.
std::vector<std::pair<int, int>> skew_index_pairs(int n);

/// Skew matrix with unit Frobenius norm for the plane (a, b): entry (b, a) is
/// 1/sqrt(2) and (a, b) is -1/sqrt(2).
Matrix skew_unit(int n, int a, int b);

/// Coordinates of a skew matrix in the unit skew basis.
Vector skew_to_coords(const Matrix& m);
Matrix coords_to_skew(const Vector& c, int n);

/// Flattens a matrix column-major into a vector.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int rows, int cols);

}  // namespace liemetric::linalg
