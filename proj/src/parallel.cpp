#include "liemetric/parallel.hpp"

#include "liemetric/curvature.hpp"
#include "liemetric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace liemetric {

namespace {

double gamma_scale(const Connection& conn) {
  double s = 1.0;
  for (const auto& g : conn.gamma) s = std::max(s, linalg::max_abs(g));
  return s;
}

}  // namespace

double parallel_residual(const Connection& conn, const Matrix& h) {
  double worst = 0.0;
  for (const auto& g : conn.gamma) worst = std::max(worst, linalg::max_abs(g * h - h * g));
  return worst;
}

bool is_parallel(const Connection& conn, const Matrix& h) {
  const double scale = gamma_scale(conn) * std::max(1.0, linalg::max_abs(h));
  return parallel_residual(conn, h) <= conn.tol.threshold(scale);
}

Matrix to_frame(const Matrix& h, const Frame& frame) {
  return frame.inverse() * h * frame.matrix();
}

ParallelBasis parallel_space(const Connection& conn) {
  const int n = conn.dim();
  const auto pairs = linalg::skew_index_pairs(n);
  const int m = static_cast<int>(pairs.size());
  ParallelBasis out;
  out.n = n;
  if (m == 0) return out;

  // Column p holds the stacked commutators [gamma_i, S_p] of the p-th unit skew matrix.
  Matrix system(static_cast<Eigen::Index>(n) * n * n, m);
  for (int p = 0; p < m; ++p) {
    const Matrix s = linalg::skew_unit(n, pairs[static_cast<size_t>(p)].first,
                                       pairs[static_cast<size_t>(p)].second);
    for (int i = 0; i < n; ++i) {
      const auto& g = conn.gamma[static_cast<size_t>(i)];
      system.block(static_cast<Eigen::Index>(i) * n * n, p, n * n, 1) = linalg::vec(g * s - s * g);
    }
  }
  const Matrix null = linalg::nullspace(system, conn.tol);
  const Matrix coords = linalg::canonical_basis(null, conn.tol);
  for (Eigen::Index c = 0; c < coords.cols(); ++c) {
    Matrix h = linalg::coords_to_skew(coords.col(c), n);
    out.max_commutator_residual = std::max(out.max_commutator_residual, parallel_residual(conn, h));
    out.elements.push_back(std::move(h));
  }
  return out;
}

SpectralClass classify_element(const Matrix& h, const Tolerance& tol) {
  const int n = static_cast<int>(h.rows());
  const double hscale = std::max(1.0, linalg::max_abs(h));
  if (h.cols() != n || linalg::max_abs(h + h.transpose()) > tol.threshold(hscale)) {
    throw NotSkew("classify_element expects a skew-symmetric matrix");
  }
  const Matrix hs = 0.5 * (h - h.transpose());
  const Matrix s = hs.transpose() * hs;  // = -H^2, symmetric PSD
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  const Vector mu = eig.eigenvalues();  // ascending
  const Matrix vecs = eig.eigenvectors();
  const double scale = std::max(1e-300, mu.size() ? mu(mu.size() - 1) : 0.0);
  const double tau = tol.threshold(std::max(1.0, scale));

  SpectralClass out;
  std::vector<Eigen::Index> kernel_cols;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu(i) <= tau) kernel_cols.push_back(i);
  }
  Matrix kernel(n, static_cast<Eigen::Index>(kernel_cols.size()));
  for (size_t c = 0; c < kernel_cols.size(); ++c) kernel.col(static_cast<Eigen::Index>(c)) = vecs.col(kernel_cols[c]);
  out.kernel = Subspace(kernel, tol);

  // Cluster the nonzero eigenvalues, largest first.
  Eigen::Index i = mu.size() - 1;
  while (i >= 0 && mu(i) > tau) {
    Eigen::Index j = i;
    while (j - 1 >= 0 && mu(j - 1) > tau && std::abs(mu(j - 1) - mu(i)) <= tau * 1e3) --j;
    const Eigen::Index size = i - j + 1;
    Matrix space = vecs.middleCols(j, size);
    const double a = std::sqrt(mu.segment(j, size).mean());
    while (space.cols() > 0) {
      const Vector v = space.col(0);
      const Vector w = hs * v / a;
      Matrix plane(n, 2);
      plane.col(0) = v;
      plane.col(1) = w.normalized();
      out.rotation_pairs.push_back({a, plane});
      Matrix rest = space - plane * (plane.transpose() * space);
      space = linalg::column_space(rest, Tolerance{1e-6, 1e-12});
    }
    i = j - 1;
  }
  std::sort(out.rotation_pairs.begin(), out.rotation_pairs.end(),
            [](const RotationPair& x, const RotationPair& y) { return x.angle < y.angle; });

  if (out.kernel.dim() == 0 && !out.rotation_pairs.empty()) {
    const double lo = out.rotation_pairs.front().angle;
    const double hi = out.rotation_pairs.back().angle;
    out.is_complex_multiple = (hi - lo) <= tol.threshold(std::max(1.0, hi)) * 1e3;
    out.is_complex_structure =
        out.is_complex_multiple && std::abs(hi - 1.0) <= tol.threshold(1.0) * 1e3;
  }
  return out;
}

WitnessSearch contains_non_complex_multiple(const ParallelBasis& basis, std::uint64_t seed,
                                            const Tolerance& tol) {
  WitnessSearch out;
  auto try_candidate = [&](const Matrix& h) {
    if (linalg::max_abs(h) <= tol.threshold(1.0)) return false;
    auto cls = classify_element(h, tol);
    if (cls.is_complex_multiple) return false;
    out.found = true;
    out.witness = h;
    out.spectral = std::move(cls);
    return true;
  };

  const auto& e = basis.elements;
  for (const auto& h : e) {
    if (try_candidate(h)) return out;
  }
  for (size_t i = 0; i < e.size(); ++i) {
    for (size_t j = i + 1; j < e.size(); ++j) {
      for (double c : {1.0, -1.0, 2.0}) {
        if (try_candidate(e[i] + c * e[j])) return out;
      }
    }
  }
  if (!e.empty()) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
      Matrix h = Matrix::Zero(basis.n, basis.n);
      for (const auto& b : e) h += normal(rng) * b;
      if (try_candidate(h)) return out;
    }
  }
  return out;
}

namespace {

std::optional<std::vector<double>> restricted_charpoly(const Matrix& h, const Subspace& w,
                                                       const Tolerance& tol) {
  const Matrix& q = w.basis();
  if (q.cols() == 0) return std::vector<double>{1.0};
  const Matrix hq = h * q;
  const Matrix leak = hq - q * (q.transpose() * hq);
  if (linalg::max_abs(leak) > tol.threshold(std::max(1.0, linalg::max_abs(h)))) {
    return std::nullopt;
  }
  return linalg::charpoly(q.transpose() * hq);
}

std::string poly_string(const std::vector<double>& p) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ']';
  return os.str();
}

}  // namespace

Fingerprint fingerprint(const MetricLieAlgebra& mla, const Matrix& h) {
  const auto conn = levi_civita(mla);
  const auto& tol = mla.tolerance();
  if (h.rows() != mla.dim() || h.cols() != mla.dim()) {
    throw DimensionMismatch("tensor and algebra dimensions differ");
  }
  if (!is_parallel(conn, h)) {
    throw NotParallel("fingerprint requires a parallel endomorphism (residual " +
                      std::to_string(parallel_residual(conn, h)) + ")");
  }
  const auto& alg = conn.algebra;  // orthonormal frame: Euclidean = metric
  const Subspace derived = derived_subalgebra(alg, tol);
  const Subspace ctr = center(alg, tol);
  const Subspace derived2 = bracket_span(alg, derived, derived, tol);

  Fingerprint fp;
  fp.ric_charpoly = linalg::charpoly(ricci(curvature(conn)).op);
  fp.h_charpoly = linalg::charpoly(h);
  fp.h_on_derived_charpoly = restricted_charpoly(h, derived, tol);
  fp.h_on_center_charpoly = restricted_charpoly(h, ctr, tol);

  const int n = mla.dim();
  Matrix killing(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) killing(i, j) = (alg.ad(i) * alg.ad(j)).trace();
  fp.killing_charpoly = linalg::charpoly(killing);

  fp.dims = {n, derived.dim(), ctr.dim(), derived2.dim(), parallel_space(conn).dim()};
  return fp;
}

Distinction compare_fingerprints(const Fingerprint& a, const Fingerprint& b,
                                 const Tolerance& tol) {
  auto differ = [&](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) return true;
    for (size_t i = 0; i < x.size(); ++i) {
      const double scale = std::max({1.0, std::abs(x[i]), std::abs(y[i])});
      if (std::abs(x[i] - y[i]) > tol.threshold(scale) * 1e3) return true;
    }
    return false;
  };
  auto differ_opt = [&](const std::optional<std::vector<double>>& x,
                        const std::optional<std::vector<double>>& y) {
    if (x.has_value() != y.has_value()) return true;
    return x.has_value() && differ(*x, *y);
  };

  if (!(a.dims == b.dims)) {
    std::ostringstream os;
    os << "dimension tuples differ: (" << a.dims.algebra << "," << a.dims.derived << ","
       << a.dims.center << "," << a.dims.derived_of_derived << "," << a.dims.parallel << ") vs ("
       << b.dims.algebra << "," << b.dims.derived << "," << b.dims.center << ","
       << b.dims.derived_of_derived << "," << b.dims.parallel << ")";
    return {Verdict::Distinct, os.str()};
  }
  if (differ(a.ric_charpoly, b.ric_charpoly)) {
    return {Verdict::Distinct, "Ricci characteristic polynomials differ: " +
                                   poly_string(a.ric_charpoly) + " vs " +
                                   poly_string(b.ric_charpoly)};
  }
  if (differ(a.killing_charpoly, b.killing_charpoly)) {
    return {Verdict::Distinct, "Killing-form characteristic polynomials differ: " +
                                   poly_string(a.killing_charpoly) + " vs " +
                                   poly_string(b.killing_charpoly)};
  }
  if (differ(a.h_charpoly, b.h_charpoly)) {
    return {Verdict::Distinct, "characteristic polynomials of H differ: " +
                                   poly_string(a.h_charpoly) + " vs " +
                                   poly_string(b.h_charpoly)};
  }
  if (differ_opt(a.h_on_derived_charpoly, b.h_on_derived_charpoly)) {
    return {Verdict::Distinct, "restrictions of H to [g,g] differ"};
  }
  if (differ_opt(a.h_on_center_charpoly, b.h_on_center_charpoly)) {
    std::string reason = "restrictions of H to the center differ";
    if (a.h_on_center_charpoly && b.h_on_center_charpoly) {
      reason += ": " + poly_string(*a.h_on_center_charpoly) + " vs " +
                poly_string(*b.h_on_center_charpoly);
    }
    return {Verdict::Distinct, reason};
  }
  return {Verdict::Inconclusive, "all fingerprint fields agree"};
}

Distinction distinguish(const AlgebraWithTensor& a, const AlgebraWithTensor& b,
                        const Tolerance& tol) {
  return compare_fingerprints(fingerprint(a.mla, a.h), fingerprint(b.mla, b.h), tol);
}

}  // namespace liemetric
