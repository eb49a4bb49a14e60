#pragma once

// Lie algebras given by structure constants, inner products, frames and the
// structural subspaces ([g,g], center) used as isometry invariants.

#include "liemetric/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liemetric {

/// One sparse structure-constant entry: [e_i, e_j] has coefficient `value` on
/// e_k. Input convention is i < j; the antisymmetric partner is implied.
struct Bracket {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Dense, unvalidated rank-3 array c(i, j, k) with [e_i, e_j] = sum_k c(i,j,k) e_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim);

  /// Builds the dense array from sparse i<j entries (accumulating repeats).
  static StructureConstants from_brackets(int dim, const std::vector<Bracket>& brackets);

  int dim() const { return dim_; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }

  /// Nonzero entries with i < j, in (i, j, k) order.
  std::vector<Bracket> to_brackets(double drop_below = 0.0) const;

  bool operator==(const StructureConstants&) const = default;

 private:
  size_t index(int i, int j, int k) const {
    return (static_cast<size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

enum class ViolationKind { Antisymmetry, Jacobi };

struct Violation {
  ViolationKind kind;
  int i;
  int j;
  int k;
  double residual;

  std::string describe() const;
};

/// A structure-constant array that passed antisymmetry and Jacobi checks.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  int dim() const { return c_.dim(); }
  const StructureConstants& constants() const { return c_; }
  double c(int i, int j, int k) const { return c_(i, j, k); }

  /// Bracket of two coordinate vectors.
  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad(e_i); entry (k, j) is the e_k-coefficient of [e_i, e_j].
  Matrix ad(int i) const;
  Matrix ad(const Vector& x) const;

  /// Wraps constants without checking; used by basis changes of algebras that
  /// were already validated.
  static LieAlgebra trusted(StructureConstants c) { return LieAlgebra(std::move(c)); }

  bool operator==(const LieAlgebra&) const = default;

 private:
  explicit LieAlgebra(StructureConstants c) : c_(std::move(c)) {}
  StructureConstants c_;
};

/// Result of validate_lie_algebra: either an algebra or the list of failures.
struct Validation {
  std::optional<LieAlgebra> algebra;
  std::vector<Violation> violations;
  double max_antisymmetry_residual = 0.0;
  double max_jacobi_residual = 0.0;

  bool ok() const { return algebra.has_value(); }
};

class InvalidAlgebra : public Error {
 public:
  explicit InvalidAlgebra(std::vector<Violation> v);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

Validation validate_lie_algebra(const StructureConstants& c, const Tolerance& tol = {});

/// Validates or throws InvalidAlgebra.
LieAlgebra make_lie_algebra(const StructureConstants& c, const Tolerance& tol = {});
LieAlgebra make_lie_algebra(int dim, const std::vector<Bracket>& brackets,
                            const Tolerance& tol = {});

double jacobi_residual(const StructureConstants& c);

/// Change of basis; column j of `matrix` holds the old coordinates of f_j.
class Frame {
 public:
  Frame() = default;
  /// Throws SingularFrame when |det| <= tol.abs.
  explicit Frame(Matrix matrix, const Tolerance& tol = {});

  static Frame identity(int n) { return Frame(Matrix::Identity(n, n)); }

  const Matrix& matrix() const { return p_; }
  const Matrix& inverse() const { return p_inv_; }
  int dim() const { return static_cast<int>(p_.rows()); }

 private:
  Matrix p_;
  Matrix p_inv_;
};

/// (g, <.,.>) with gram(i, j) = <e_i, e_j>.
class MetricLieAlgebra {
 public:
  MetricLieAlgebra() = default;
  /// Checks symmetry (NotSymmetric) and positive definiteness
  /// (NotPositiveDefinite), and that dimensions agree (DimensionMismatch).
  MetricLieAlgebra(LieAlgebra algebra, Matrix gram, const Tolerance& tol = {});

  const LieAlgebra& algebra() const { return algebra_; }
  const Matrix& gram() const { return gram_; }
  const Tolerance& tolerance() const { return tol_; }
  int dim() const { return algebra_.dim(); }

 private:
  LieAlgebra algebra_;
  Matrix gram_;
  Tolerance tol_;
};

/// A subspace of R^n stored through an orthonormal (Euclidean) basis.
class Subspace {
 public:
  Subspace() = default;
  /// Spans the columns of `spanning`; the stored basis is canonical.
  Subspace(const Matrix& spanning, const Tolerance& tol = {});

  static Subspace zero(int n) { return Subspace(Matrix(n, 0)); }
  static Subspace whole(int n) { return Subspace(Matrix::Identity(n, n)); }

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return basis_ * basis_.transpose(); }

  bool contains(const Vector& v, double eps) const;
  bool contains(const Subspace& other, double eps) const;
  /// Mutual containment.
  bool same_as(const Subspace& other, double eps) const;

 private:
  Matrix basis_;
};

/// Gram-Schmidt in input order; P^T G P = I. Throws NotPositiveDefinite.
Frame orthonormal_frame(const MetricLieAlgebra& mla);

/// Structure constants of the same bracket in the basis given by `frame`.
LieAlgebra change_basis(const LieAlgebra& algebra, const Frame& frame);
/// Algebra and Gram matrix (P^T G P) in the new basis.
MetricLieAlgebra change_basis(const MetricLieAlgebra& mla, const Frame& frame);

Subspace derived_subalgebra(const LieAlgebra& algebra, const Tolerance& tol = {});
Subspace center(const LieAlgebra& algebra, const Tolerance& tol = {});
/// [W, W] for a subspace W (e.g. [[g,g],[g,g]]).
Subspace bracket_span(const LieAlgebra& algebra, const Subspace& a, const Subspace& b,
                      const Tolerance& tol = {});

}  // namespace liemetric
