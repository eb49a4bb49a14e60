#include "liemetric/curvature.hpp"

#include "liemetric/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace liemetric {

Matrix CurvatureData::operator()(const Vector& x, const Vector& y) const {
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (y(j) != 0.0) m += x(i) * y(j) * at(i, j);
    }
  }
  return m;
}

double CurvatureData::max_abs() const {
  double worst = 0.0;
  for (const auto& m : operators) worst = std::max(worst, linalg::max_abs(m));
  return worst;
}

CurvatureData curvature(const Connection& conn, const LieAlgebra& algebra,
                        const Frame& algebra_frame) {
  const int n = conn.dim();
  if (algebra.dim() != n || algebra_frame.dim() != n) {
    throw FrameMismatch("curvature inputs have different dimensions");
  }
  const double scale = std::max(1.0, linalg::max_abs(conn.frame.matrix()));
  if (linalg::max_abs(algebra_frame.matrix() - conn.frame.matrix()) >
      conn.tol.threshold(scale)) {
    throw FrameMismatch("structure constants and connection use different frames");
  }
  CurvatureData out;
  out.n = n;
  out.operators.reserve(static_cast<size_t>(n * n));
  const auto& g = conn.gamma;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Matrix r = g[static_cast<size_t>(i)] * g[static_cast<size_t>(j)] -
                 g[static_cast<size_t>(j)] * g[static_cast<size_t>(i)];
      for (int k = 0; k < n; ++k) {
        const double ck = algebra.c(i, j, k);
        if (ck != 0.0) r -= ck * g[static_cast<size_t>(k)];
      }
      out.operators.push_back(std::move(r));
    }
  }
  return out;
}

CurvatureData curvature(const Connection& conn) {
  return curvature(conn, conn.algebra, conn.frame);
}

RicciData ricci(const CurvatureData& curv) {
  const int n = curv.n;
  RicciData out;
  out.op = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += curv.at(i, j)(i, k);
      out.op(j, k) = s;
    }
  }
  out.scalar = out.op.trace();
  return out;
}

double sectional(const CurvatureData& curv, const Vector& x, const Vector& y,
                 const Tolerance& tol) {
  const double gram = x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2);
  const double scale = std::max(1.0, x.squaredNorm() * y.squaredNorm());
  if (!(gram > tol.threshold(scale))) {
    throw DegeneratePlane("sectional curvature needs linearly independent vectors");
  }
  return x.dot(curv(x, y) * y) / gram;
}

double argument_antisymmetry_residual(const CurvatureData& curv) {
  double worst = 0.0;
  for (int i = 0; i < curv.n; ++i)
    for (int j = 0; j < curv.n; ++j)
      worst = std::max(worst, linalg::max_abs(curv.at(i, j) + curv.at(j, i)));
  return worst;
}

double value_skew_residual(const CurvatureData& curv) {
  double worst = 0.0;
  for (const auto& m : curv.operators) worst = std::max(worst, linalg::max_abs(m + m.transpose()));
  return worst;
}

double bianchi_residual(const CurvatureData& curv) {
  const int n = curv.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vector s = curv.at(i, j).col(k) + curv.at(j, k).col(i) + curv.at(k, i).col(j);
        worst = std::max(worst, s.cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double pair_symmetry_residual(const CurvatureData& curv) {
  // <R(e_i,e_j)e_k, e_l> = <R(e_k,e_l)e_i, e_j>
  const int n = curv.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(curv.at(i, j)(l, k) - curv.at(k, l)(j, i)));
  return worst;
}

}  // namespace liemetric
