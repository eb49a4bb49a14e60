#include "liemetric/holonomy.hpp"

#include "liemetric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

namespace liemetric {

double TwoForm::coeff(int i, int j) const {
  if (i == j) return 0.0;
  if (i > j) return -coeff(j, i);
  // Offset of (i, j) in the lexicographic list of pairs.
  const int offset = i * n - i * (i + 1) / 2 + (j - i - 1);
  return coeffs(offset);
}

TwoForm matrix_to_two_form(const Matrix& m, const Tolerance& tol) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n ||
      linalg::max_abs(m + m.transpose()) > tol.threshold(std::max(1.0, linalg::max_abs(m)))) {
    throw NotSkew("only skew-symmetric matrices correspond to 2-forms");
  }
  const auto pairs = linalg::skew_index_pairs(n);
  TwoForm out{n, Vector(static_cast<Eigen::Index>(pairs.size()))};
  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    out.coeffs(static_cast<Eigen::Index>(p)) = m(j, i);  // <M e_i, e_j>
  }
  return out;
}

Matrix two_form_to_matrix(const TwoForm& omega) {
  const auto pairs = linalg::skew_index_pairs(omega.n);
  if (omega.coeffs.size() != static_cast<Eigen::Index>(pairs.size())) {
    throw DimensionMismatch("2-form has the wrong number of coefficients");
  }
  Matrix m = Matrix::Zero(omega.n, omega.n);
  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    m(j, i) = omega.coeffs(static_cast<Eigen::Index>(p));
    m(i, j) = -m(j, i);
  }
  return m;
}

size_t OperatorTensor::offset(const std::vector<int>& args) const {
  size_t off = 0;
  for (int a : args) off = off * static_cast<size_t>(n) + static_cast<size_t>(a);
  return off;
}

const Matrix& OperatorTensor::at(const std::vector<int>& args) const { return values[offset(args)]; }
Matrix& OperatorTensor::at(const std::vector<int>& args) { return values[offset(args)]; }

OperatorTensor curvature_tensor(const CurvatureData& curv) {
  return {curv.n, 2, curv.operators};
}

OperatorTensor operator_field(const Matrix& m) {
  return {static_cast<int>(m.rows()), 0, {m}};
}

namespace {

std::vector<int> unravel(size_t off, int n, int arity) {
  std::vector<int> args(static_cast<size_t>(arity));
  for (int s = arity - 1; s >= 0; --s) {
    args[static_cast<size_t>(s)] = static_cast<int>(off % static_cast<size_t>(n));
    off /= static_cast<size_t>(n);
  }
  return args;
}

}  // namespace

OperatorTensor covariant_derivative(const Connection& conn, const OperatorTensor& t, int k) {
  const auto& g = conn.gamma[static_cast<size_t>(k)];
  OperatorTensor out{t.n, t.arity, {}};
  out.values.reserve(t.values.size());
  for (size_t off = 0; off < t.values.size(); ++off) {
    const Matrix& v = t.values[off];
    Matrix d = g * v - v * g;
    auto args = unravel(off, t.n, t.arity);
    for (int slot = 0; slot < t.arity; ++slot) {
      const int a = args[static_cast<size_t>(slot)];
      // gamma[k] e_a = sum_b gamma[k](b, a) e_b
      for (int b = 0; b < t.n; ++b) {
        const double w = g(b, a);
        if (w == 0.0) continue;
        args[static_cast<size_t>(slot)] = b;
        d -= w * t.at(args);
      }
      args[static_cast<size_t>(slot)] = a;
    }
    out.values.push_back(std::move(d));
  }
  return out;
}

OperatorTensor covariant_differential(const Connection& conn, const OperatorTensor& t) {
  OperatorTensor out{t.n, t.arity + 1, {}};
  out.values.reserve(t.values.size() * static_cast<size_t>(t.n));
  for (int k = 0; k < t.n; ++k) {
    auto dk = covariant_derivative(conn, t, k);
    for (auto& v : dk.values) out.values.push_back(std::move(v));
  }
  return out;
}

namespace {

// Orthonormal skew-coordinate basis of the span of the given matrices.
Matrix span_coords(const std::vector<Matrix>& mats, int n, const Tolerance& tol) {
  const Eigen::Index m = n * (n - 1) / 2;
  Matrix cols(m, static_cast<Eigen::Index>(mats.size()));
  for (size_t c = 0; c < mats.size(); ++c) {
    cols.col(static_cast<Eigen::Index>(c)) = linalg::skew_to_coords(mats[c]);
  }
  return linalg::column_space(cols, tol);
}

std::vector<Matrix> coords_to_mats(const Matrix& coords, int n) {
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < coords.cols(); ++c) out.push_back(linalg::coords_to_skew(coords.col(c), n));
  return out;
}

}  // namespace

HolonomyAlgebra holonomy_algebra(const Connection& conn, const CurvatureData& curv,
                                 int max_level) {
  const int n = conn.dim();
  const auto& tol = conn.tol;
  HolonomyAlgebra hol;
  hol.n = n;
  if (max_level < 0) max_level = n * (n + 1) / 2;

  // Values of nabla^{l+1} R differ from [gamma_k, nabla^l R values] only by
  // values of nabla^l R, so the level-l span closes under ad(gamma_k).
  Matrix span = span_coords(curv.operators, n, tol);
  hol.level_reached = 0;
  hol.stabilized = span.cols() == 0;
  for (int level = 1; level <= max_level && !hol.stabilized; ++level) {
    auto current = coords_to_mats(span, n);
    std::vector<Matrix> next = current;
    for (const auto& b : current) {
      for (const auto& g : conn.gamma) next.push_back(g * b - b * g);
    }
    Matrix grown = span_coords(next, n, tol);
    hol.level_reached = level;
    if (grown.cols() == span.cols()) hol.stabilized = true;
    span = std::move(grown);
  }
  if (!hol.stabilized) {
    hol.warnings.push_back("holonomy span did not stabilize within " +
                           std::to_string(max_level) + " covariant-derivative levels");
  }

  // Commutator closure.
  for (;;) {
    auto current = coords_to_mats(span, n);
    std::vector<Matrix> next = current;
    for (size_t i = 0; i < current.size(); ++i)
      for (size_t j = i + 1; j < current.size(); ++j)
        next.push_back(current[i] * current[j] - current[j] * current[i]);
    Matrix grown = span_coords(next, n, tol);
    if (grown.cols() == span.cols()) break;
    span = std::move(grown);
  }

  hol.basis = coords_to_mats(linalg::canonical_basis(span, tol), n);
  return hol;
}

double bracket_closure_residual(const HolonomyAlgebra& hol) {
  const Matrix span = span_coords(hol.basis, hol.n, Tolerance{});
  double worst = 0.0;
  for (size_t i = 0; i < hol.basis.size(); ++i) {
    for (size_t j = i + 1; j < hol.basis.size(); ++j) {
      const Matrix c = hol.basis[i] * hol.basis[j] - hol.basis[j] * hol.basis[i];
      worst = std::max(worst, linalg::distance_to_span(span, linalg::skew_to_coords(c)));
    }
  }
  return worst;
}

double invariance_residual(const HolonomyAlgebra& hol, const Subspace& w) {
  const Matrix p = w.projector();
  const Matrix id = Matrix::Identity(hol.n, hol.n);
  double worst = 0.0;
  for (const auto& b : hol.basis) worst = std::max(worst, linalg::max_abs((id - p) * b * p));
  return worst;
}

namespace {

// Orthonormal basis of the symmetric d x d matrices commuting with every op.
std::vector<Matrix> symmetric_commutant(const std::vector<Matrix>& ops, int d,
                                        const Tolerance& tol) {
  std::vector<Matrix> sym_basis;
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      Matrix s = Matrix::Zero(d, d);
      if (a == b) {
        s(a, a) = 1.0;
      } else {
        s(a, b) = s(b, a) = M_SQRT1_2;
      }
      sym_basis.push_back(std::move(s));
    }
  }
  const auto m = static_cast<Eigen::Index>(sym_basis.size());
  if (ops.empty()) return sym_basis;
  Matrix system(static_cast<Eigen::Index>(ops.size()) * d * d, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const auto& s = sym_basis[static_cast<size_t>(c)];
    for (size_t o = 0; o < ops.size(); ++o) {
      system.block(static_cast<Eigen::Index>(o) * d * d, c, d * d, 1) =
          linalg::vec(ops[o] * s - s * ops[o]);
    }
  }
  const Matrix null = linalg::nullspace(system, tol);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Matrix s = Matrix::Zero(d, d);
    for (Eigen::Index p = 0; p < m; ++p) s += null(p, c) * sym_basis[static_cast<size_t>(p)];
    out.push_back(std::move(s));
  }
  return out;
}

struct Splitter {
  const HolonomyAlgebra& hol;
  const Tolerance& tol;
  std::mt19937_64 rng;
  std::vector<InvariantFactor> factors;
  std::vector<std::string> warnings;

  void split(const Matrix& q) {
    const int d = static_cast<int>(q.cols());
    std::vector<Matrix> ops;
    for (const auto& b : hol.basis) ops.push_back(q.transpose() * b * q);
    const auto commutant = symmetric_commutant(ops, d, tol);
    if (d <= 1 || commutant.size() <= 1) {
      factors.push_back({Subspace(q, tol), false});
      return;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
      Matrix s = Matrix::Zero(d, d);
      for (const auto& c : commutant) s += normal(rng) * c;
      Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
      const Vector mu = eig.eigenvalues();
      const double radius = mu.cwiseAbs().maxCoeff();
      const double gap = std::max(tol.abs, 1e-6 * radius);
      std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
      Eigen::Index start = 0;
      for (Eigen::Index i = 1; i <= mu.size(); ++i) {
        if (i == mu.size() || mu(i) - mu(i - 1) > gap) {
          clusters.emplace_back(start, i - start);
          start = i;
        }
      }
      if (clusters.size() < 2) continue;
      for (const auto& [first, size] : clusters) {
        split(q * eig.eigenvectors().middleCols(first, size));
      }
      return;
    }
    warnings.push_back("symmetric commutant of dimension " + std::to_string(commutant.size()) +
                       " produced no eigenvalue gap in 8 draws; block kept whole");
    factors.push_back({Subspace(q, tol), false});
  }
};

Eigen::Index leading_index(const Subspace& s) {
  const Matrix& b = s.basis();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    if (b.row(i).norm() > 1e-6) return i;
  }
  return b.rows();
}

template <typename F>
void sort_by_position(std::vector<F>& factors) {
  std::stable_sort(factors.begin(), factors.end(), [](const F& x, const F& y) {
    const auto lx = leading_index(x.subspace);
    const auto ly = leading_index(y.subspace);
    if (lx != ly) return lx < ly;
    const Vector dx = x.subspace.projector().diagonal();
    const Vector dy = y.subspace.projector().diagonal();
    for (Eigen::Index i = 0; i < dx.size(); ++i) {
      if (std::abs(dx(i) - dy(i)) > 1e-9) return dx(i) > dy(i);
    }
    return false;
  });
}

}  // namespace

InvariantDecomposition invariant_decomposition(const HolonomyAlgebra& hol, std::uint64_t seed,
                                               const Tolerance& tol) {
  const int n = hol.n;
  Matrix stacked(static_cast<Eigen::Index>(hol.basis.size()) * n, n);
  for (size_t i = 0; i < hol.basis.size(); ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = hol.basis[i];
  }
  const Subspace kernel(linalg::nullspace(stacked, tol), tol);

  Splitter splitter{hol, tol, std::mt19937_64(seed), {}, {}};
  for (Eigen::Index c = 0; c < kernel.basis().cols(); ++c) {
    splitter.factors.push_back({Subspace(Matrix(kernel.basis().col(c)), tol), true});
  }
  if (kernel.dim() < n) {
    const Matrix complement =
        linalg::nullspace(kernel.dim() ? Matrix(kernel.basis().transpose()) : Matrix(0, n), tol);
    splitter.split(linalg::canonical_basis(complement, tol));
  }
  sort_by_position(splitter.factors);
  return {std::move(splitter.factors), std::move(splitter.warnings)};
}

DeRhamDecomposition derham_report(const MetricLieAlgebra& mla, const DeRhamOptions& opts) {
  const auto conn = levi_civita(mla);
  const auto curv = curvature(conn);
  DeRhamDecomposition out;
  out.holonomy = holonomy_algebra(conn, curv, opts.max_level);
  out.warnings = out.holonomy.warnings;
  auto split = invariant_decomposition(out.holonomy, opts.seed, conn.tol);
  for (auto& w : split.warnings) out.warnings.push_back(std::move(w));

  Matrix flat_basis(conn.dim(), 0);
  std::optional<size_t> flat_slot;
  for (const auto& f : split.factors) {
    if (f.flat) {
      Matrix grown(conn.dim(), flat_basis.cols() + 1);
      grown << flat_basis, f.subspace.basis();
      flat_basis = std::move(grown);
      if (!flat_slot) {
        flat_slot = out.factors.size();
        out.factors.push_back({Subspace::zero(conn.dim()), FactorKind::Flat, 0.0});
      }
      continue;
    }
    DeRhamFactor factor{f.subspace, FactorKind::Irreducible, 0.0};
    if (f.subspace.dim() == 2) {
      factor.kind = FactorKind::Surface;
      // Left-invariant metrics are homogeneous: K at the identity is K everywhere.
      factor.curvature = sectional(curv, f.subspace.basis().col(0), f.subspace.basis().col(1),
                                   conn.tol);
    }
    out.factors.push_back(std::move(factor));
  }
  if (flat_slot) out.factors[*flat_slot].subspace = Subspace(flat_basis, conn.tol);
  return out;
}

std::string describe(const DeRhamFactor& f) {
  std::ostringstream os;
  switch (f.kind) {
    case FactorKind::Flat:
      os << "Flat(" << f.subspace.dim() << ")";
      break;
    case FactorKind::Surface: {
      const double k = std::abs(f.curvature) < 1e-12 ? 0.0 : f.curvature;
      os << "Surface(" << std::setprecision(6) << k << ")";
      break;
    }
    case FactorKind::Irreducible:
      os << "Irreducible(" << f.subspace.dim() << ")";
      break;
  }
  return os.str();
}

std::string describe(const DeRhamDecomposition& d) {
  std::string s;
  for (size_t i = 0; i < d.factors.size(); ++i) {
    if (i) s += " x ";
    s += describe(d.factors[i]);
  }
  return s.empty() ? "(zero-dimensional)" : s;
}

}  // namespace liemetric
