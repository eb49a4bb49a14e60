#include "liemetric/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace liemetric {

double Tolerance::threshold(double scale) const {
  return std::max(abs, rel * scale);
}

void Tolerance::check() const {
  if (!(abs > 0.0 && abs <= rel && rel < 1.0)) {
    throw std::invalid_argument("tolerance must satisfy 0 < abs <= rel < 1");
  }
}

namespace linalg {

namespace {

struct Svd {
  Vector sigma;
  Matrix u;
  Matrix v;
};

Svd full_svd(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

int rank_of(const Vector& sigma, const Tolerance& tol) {
  if (sigma.size() == 0) return 0;
  const double tau = tol.threshold(sigma(0));
  int r = 0;
  while (r < sigma.size() && sigma(r) > tau) ++r;
  return r;
}

void fix_sign(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

}  // namespace

int numerical_rank(const Matrix& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return rank_of(svd.singularValues(), tol);
}

Matrix column_space(const Matrix& m, const Tolerance& tol) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  auto s = full_svd(m);
  const int r = rank_of(s.sigma, tol);
  return s.u.leftCols(r);
}

Matrix nullspace(const Matrix& m, const Tolerance& tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0 || m.size() == 0) return Matrix::Identity(n, n);
  auto s = full_svd(m);
  const int r = rank_of(s.sigma, tol);
  return s.v.rightCols(n - r);
}

Matrix canonical_basis(const Matrix& basis, const Tolerance& tol) {
  const Eigen::Index n = basis.rows();
  const Matrix q = column_space(basis, tol);
  const Eigen::Index d = q.cols();
  if (d == 0) return Matrix(n, 0);
  const Matrix proj = q * q.transpose();

  Matrix out(n, d);
  Eigen::Index count = 0;
  auto residual = [&](Eigen::Index i) {
    Vector v = proj.col(i);
    for (Eigen::Index c = 0; c < count; ++c) v -= out.col(c).dot(v) * out.col(c);
    return v;
  };
  // Index order first; the acceptance floor keeps near-degenerate picks out.
  for (Eigen::Index i = 0; i < n && count < d; ++i) {
    Vector v = residual(i);
    const double norm = v.norm();
    if (norm >= 1e-3) {
      out.col(count++) = v / norm;
    }
  }
  while (count < d) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double norm = residual(i).norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = i;
      }
    }
    Vector v = residual(best);
    out.col(count++) = v / v.norm();
  }
  for (Eigen::Index c = 0; c < d; ++c) fix_sign(out.col(c));
  return out;
}

double distance_to_span(const Matrix& q, const Vector& v) {
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.transpose() * v)).norm();
}

double containment_residual(const Matrix& q, const Matrix& b) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    worst = std::max(worst, distance_to_span(q, b.col(j)));
  }
  return worst;
}

std::vector<double> charpoly(const Matrix& m) {
  // Faddeev-LeVerrier; exact enough for the small operators handled here.
  const Eigen::Index n = m.rows();
  std::vector<double> coeffs(static_cast<size_t>(n) + 1, 0.0);
  coeffs[0] = 1.0;
  Matrix mk = Matrix::Zero(n, n);
  const Matrix id = Matrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + coeffs[static_cast<size_t>(k - 1)] * id;
    coeffs[static_cast<size_t>(k)] = -(m * mk).trace() / static_cast<double>(k);
  }
  return coeffs;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::vector<std::pair<int, int>> skew_index_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(n * (n - 1) / 2));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

Matrix skew_unit(int n, int a, int b) {
  Matrix m = Matrix::Zero(n, n);
  m(b, a) = M_SQRT1_2;
  m(a, b) = -M_SQRT1_2;
  return m;
}

Vector skew_to_coords(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  const auto pairs = skew_index_pairs(n);
  Vector c(static_cast<Eigen::Index>(pairs.size()));
  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    // Average the two slots so a slightly asymmetric input is projected.
    c(static_cast<Eigen::Index>(p)) = (m(b, a) - m(a, b)) * M_SQRT1_2;
  }
  return c;
}

Matrix coords_to_skew(const Vector& c, int n) {
  const auto pairs = skew_index_pairs(n);
  Matrix m = Matrix::Zero(n, n);
  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    m(b, a) = c(static_cast<Eigen::Index>(p)) * M_SQRT1_2;
    m(a, b) = -m(b, a);
  }
  return m;
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

}  // namespace linalg
}  // namespace liemetric
