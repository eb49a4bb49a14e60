#include "liemetric/algebra.hpp"

#include "liemetric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace liemetric {

StructureConstants::StructureConstants(int dim) : dim_(dim) {
  if (dim < 1) throw DimensionMismatch("Lie algebra dimension must be at least 1");
  data_.assign(static_cast<size_t>(dim) * dim * dim, 0.0);
}

StructureConstants StructureConstants::from_brackets(int dim,
                                                     const std::vector<Bracket>& brackets) {
  StructureConstants c(dim);
  for (const auto& b : brackets) {
    if (b.i < 0 || b.j < 0 || b.k < 0 || b.i >= dim || b.j >= dim || b.k >= dim) {
      throw DimensionMismatch("bracket index out of range");
    }
    if (b.i >= b.j) {
      throw DimensionMismatch("bracket entries must satisfy i < j");
    }
    c(b.i, b.j, b.k) += b.value;
    c(b.j, b.i, b.k) -= b.value;
  }
  return c;
}

std::vector<Bracket> StructureConstants::to_brackets(double drop_below) const {
  std::vector<Bracket> out;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) {
        const double v = (*this)(i, j, k);
        if (std::abs(v) > drop_below) out.push_back({i, j, k, v});
      }
    }
  }
  return out;
}

std::string Violation::describe() const {
  std::ostringstream os;
  if (kind == ViolationKind::Antisymmetry) {
    os << "AntisymmetryViolation(" << i << "," << j << "," << k << ") residual " << residual;
  } else {
    os << "JacobiViolation(" << i << "," << j << "," << k << ") residual " << residual;
  }
  return os.str();
}

namespace {

std::string summarize(const std::vector<Violation>& v) {
  std::ostringstream os;
  os << "invalid Lie algebra:";
  for (const auto& x : v) os << ' ' << x.describe() << ';';
  return os.str();
}

double max_constant(const StructureConstants& c) {
  double m = 0.0;
  const int n = c.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m = std::max(m, std::abs(c(i, j, k)));
  return m;
}

// Largest coefficient of the cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
double jacobi_at(const StructureConstants& c, int i, int j, int k) {
  const int n = c.dim();
  double worst = 0.0;
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int m = 0; m < n; ++m) {
      s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
    }
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace

InvalidAlgebra::InvalidAlgebra(std::vector<Violation> v)
    : Error(summarize(v)), violations_(std::move(v)) {}

double jacobi_residual(const StructureConstants& c) {
  const int n = c.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) worst = std::max(worst, jacobi_at(c, i, j, k));
  return worst;
}

Validation validate_lie_algebra(const StructureConstants& c, const Tolerance& tol) {
  Validation out;
  const int n = c.dim();
  const double scale = std::max(1.0, max_constant(c));
  const double anti_tau = tol.threshold(scale);
  const double jac_tau = tol.threshold(scale * scale);

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double r = std::abs(c(i, j, k) + c(j, i, k)) / (i == j ? 2.0 : 1.0);
        out.max_antisymmetry_residual = std::max(out.max_antisymmetry_residual, r);
        if (r > anti_tau) out.violations.push_back({ViolationKind::Antisymmetry, i, j, k, r});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const double r = jacobi_at(c, i, j, k);
        out.max_jacobi_residual = std::max(out.max_jacobi_residual, r);
        if (r > jac_tau) out.violations.push_back({ViolationKind::Jacobi, i, j, k, r});
      }
    }
  }
  if (out.violations.empty()) out.algebra = LieAlgebra::trusted(c);
  return out;
}

LieAlgebra make_lie_algebra(const StructureConstants& c, const Tolerance& tol) {
  auto v = validate_lie_algebra(c, tol);
  if (!v.ok()) throw InvalidAlgebra(std::move(v.violations));
  return *v.algebra;
}

LieAlgebra make_lie_algebra(int dim, const std::vector<Bracket>& brackets,
                            const Tolerance& tol) {
  return make_lie_algebra(StructureConstants::from_brackets(dim, brackets), tol);
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  const int n = dim();
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (y(j) == 0.0) continue;
      for (int k = 0; k < n; ++k) out(k) += x(i) * y(j) * c_(i, j, k);
    }
  }
  return out;
}

Matrix LieAlgebra::ad(int i) const {
  const int n = dim();
  Matrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(k, j) = c_(i, j, k);
  return m;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  const int n = dim();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) != 0.0) m += x(i) * ad(i);
  }
  return m;
}

Frame::Frame(Matrix matrix, const Tolerance& tol) : p_(std::move(matrix)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) {
    throw DimensionMismatch("frame matrix must be square and non-empty");
  }
  Eigen::FullPivLU<Matrix> lu(p_);
  if (std::abs(lu.determinant()) <= tol.abs || !lu.isInvertible()) {
    throw SingularFrame("frame matrix is singular");
  }
  p_inv_ = lu.inverse();
}

MetricLieAlgebra::MetricLieAlgebra(LieAlgebra algebra, Matrix gram, const Tolerance& tol)
    : algebra_(std::move(algebra)), gram_(std::move(gram)), tol_(tol) {
  const int n = algebra_.dim();
  if (gram_.rows() != n || gram_.cols() != n) {
    throw DimensionMismatch("metric must be an n x n matrix");
  }
  const double scale = std::max(1.0, linalg::max_abs(gram_));
  if (linalg::max_abs(gram_ - gram_.transpose()) > tol_.threshold(scale)) {
    throw NotSymmetric("metric is not symmetric");
  }
  // Cholesky-style pivots.
  Matrix l = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = gram_(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > tol_.threshold(scale))) {
      throw NotPositiveDefinite("metric is not positive definite (pivot " + std::to_string(j) +
                                ")");
    }
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = gram_(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
}

Subspace::Subspace(const Matrix& spanning, const Tolerance& tol)
    : basis_(linalg::canonical_basis(spanning, tol)) {}

bool Subspace::contains(const Vector& v, double eps) const {
  return linalg::distance_to_span(basis_, v) <= eps;
}

bool Subspace::contains(const Subspace& other, double eps) const {
  return linalg::containment_residual(basis_, other.basis()) <= eps;
}

bool Subspace::same_as(const Subspace& other, double eps) const {
  return dim() == other.dim() && contains(other, eps) && other.contains(*this, eps);
}

Frame orthonormal_frame(const MetricLieAlgebra& mla) {
  const int n = mla.dim();
  const Matrix& g = mla.gram();
  const double scale = std::max(1.0, linalg::max_abs(g));
  Matrix p = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    Vector v = Vector::Unit(n, j);
    // Modified Gram-Schmidt with respect to G, no pivoting.
    for (int c = 0; c < j; ++c) {
      const Vector pc = p.col(c);
      v -= (pc.transpose() * g * v).value() * pc;
    }
    const double sq = (v.transpose() * g * v).value();
    if (!(sq > mla.tolerance().threshold(scale))) {
      throw NotPositiveDefinite("Gram-Schmidt pivot " + std::to_string(j) + " is not positive");
    }
    p.col(j) = v / std::sqrt(sq);
  }
  return Frame(p, mla.tolerance());
}

LieAlgebra change_basis(const LieAlgebra& algebra, const Frame& frame) {
  const int n = algebra.dim();
  if (frame.dim() != n) throw DimensionMismatch("frame and algebra dimensions differ");
  const Matrix& p = frame.matrix();
  const Matrix& pinv = frame.inverse();
  StructureConstants out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector old = algebra.bracket(p.col(i), p.col(j));
      const Vector coords = pinv * old;
      for (int k = 0; k < n; ++k) out(i, j, k) = coords(k);
    }
  }
  return LieAlgebra::trusted(std::move(out));
}

MetricLieAlgebra change_basis(const MetricLieAlgebra& mla, const Frame& frame) {
  const Matrix& p = frame.matrix();
  Matrix g = p.transpose() * mla.gram() * p;
  g = 0.5 * (g + g.transpose());
  return MetricLieAlgebra(change_basis(mla.algebra(), frame), g, mla.tolerance());
}

Subspace derived_subalgebra(const LieAlgebra& algebra, const Tolerance& tol) {
  const int n = algebra.dim();
  Matrix spanning(n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) spanning(k, i * n + j) = algebra.c(i, j, k);
  return Subspace(spanning, tol);
}

Subspace center(const LieAlgebra& algebra, const Tolerance& tol) {
  const int n = algebra.dim();
  Matrix stacked(n * n, n);
  for (int i = 0; i < n; ++i) stacked.middleRows(i * n, n) = algebra.ad(i);
  return Subspace(linalg::nullspace(stacked, tol), tol);
}

Subspace bracket_span(const LieAlgebra& algebra, const Subspace& a, const Subspace& b,
                      const Tolerance& tol) {
  const int n = algebra.dim();
  Matrix spanning(n, a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      spanning.col(i * b.dim() + j) = algebra.bracket(a.basis().col(i), b.basis().col(j));
  return Subspace(spanning, tol);
}

}  // namespace liemetric
