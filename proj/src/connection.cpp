#include "liemetric/connection.hpp"

#include "liemetric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liemetric {

namespace {
constexpr int kE1 = 0;
constexpr int kF1 = 1;
constexpr int kE2 = 2;
constexpr int kF2 = 3;
}  // namespace

Matrix Connection::along(const Vector& x) const {
  const int n = dim();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m += x(i) * gamma[static_cast<size_t>(i)];
  return m;
}

Matrix Connection::in_input_frame(int a) const {
  // e_a = sum_i Pinv(i, a) f_i; conjugate back to input coordinates.
  const Vector x = frame.inverse().col(a);
  return frame.matrix() * along(x) * frame.inverse();
}

Connection levi_civita(const MetricLieAlgebra& mla) {
  Connection conn;
  conn.tol = mla.tolerance();
  conn.frame = orthonormal_frame(mla);
  conn.algebra = change_basis(mla.algebra(), conn.frame);
  const int n = mla.dim();
  const auto& c = conn.algebra;
  conn.gamma.assign(static_cast<size_t>(n), Matrix::Zero(n, n));
  // Koszul: 2<nabla_x y, z> = <[x,y],z> - <[y,z],x> + <[z,x],y>.
  for (int i = 0; i < n; ++i) {
    auto& g = conn.gamma[static_cast<size_t>(i)];
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        g(k, j) = 0.5 * (c.c(i, j, k) - c.c(j, k, i) + c.c(k, i, j));
      }
    }
  }
  return conn;
}

double metric_residual(const Connection& conn) {
  double worst = 0.0;
  for (const auto& g : conn.gamma) worst = std::max(worst, linalg::max_abs(g + g.transpose()));
  return worst;
}

double torsion_residual(const Connection& conn) {
  const int n = conn.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vector t = conn.gamma[static_cast<size_t>(i)].col(j) - conn.gamma[static_cast<size_t>(j)].col(i);
      for (int k = 0; k < n; ++k) t(k) -= conn.algebra.c(i, j, k);
      worst = std::max(worst, t.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Matrix two_block_rotation(double s, double t) {
  Matrix m = Matrix::Zero(4, 4);
  m(kF1, kE1) = s;
  m(kE1, kF1) = -s;
  m(kF2, kE2) = t;
  m(kE2, kF2) = -t;
  return m;
}

namespace {

double block_form_deviation(const Matrix& m) {
  const Matrix expected = two_block_rotation(m(kF1, kE1), m(kF2, kE2));
  return linalg::max_abs(m - expected);
}

}  // namespace

ConnectionForms connection_form_decomposition(const Connection& conn, const Matrix& h) {
  if (conn.dim() != 4 || h.rows() != 4 || h.cols() != 4) {
    throw DimensionMismatch("connection form decomposition needs a 4-dimensional algebra");
  }
  const double scale = std::max(1.0, linalg::max_abs(h));
  const double tau = conn.tol.threshold(scale);
  if (block_form_deviation(h) > tau) {
    throw NotBlockForm("H is not blocks(rot(a1), rot(a2)) in the connection frame");
  }
  const double a1 = h(kF1, kE1);
  const double a2 = h(kF2, kE2);
  if (std::abs(std::abs(a1) - std::abs(a2)) <= tau) {
    throw NotBlockForm("H has |a1| = |a2|; the block form is not forced");
  }
  ConnectionForms forms;
  for (int i = 0; i < 4; ++i) {
    const auto& g = conn.gamma[static_cast<size_t>(i)];
    const double gscale = std::max(1.0, linalg::max_abs(g));
    if (block_form_deviation(g) > conn.tol.threshold(gscale)) {
      throw NotBlockForm("nabla_" + std::to_string(i) + " is not of two-block rotation form");
    }
    forms.alpha[static_cast<size_t>(i)] = g(kF1, kE1);
    forms.beta[static_cast<size_t>(i)] = g(kF2, kE2);
  }
  return forms;
}

ConnectionFormRelations evaluate_relations(const ConnectionForms& forms) {
  const double ae1 = forms.alpha[kE1], af1 = forms.alpha[kF1];
  const double ae2 = forms.alpha[kE2], af2 = forms.alpha[kF2];
  const double be1 = forms.beta[kE1], bf1 = forms.beta[kF1];
  const double be2 = forms.beta[kE2], bf2 = forms.beta[kF2];

  ConnectionFormRelations r;
  r.values = {
      ae1 * be1 + af1 * bf1,   //
      ae1 * ae2 + af2 * bf1,   //
      -ae2 * af1 + af2 * be1,  //
      ae1 * af2 - ae2 * bf1,   //
      af1 * af2 + ae2 * be1,   //
      be2 * ae2 + bf2 * af2,   //
      be2 * be1 + bf1 * af2,   //
      -be1 * bf2 + bf1 * ae2,  //
      be2 * bf1 - be1 * af2,   //
      bf2 * bf1 + be1 * ae2,   //
  };

  Eigen::Matrix2d u, v, a, b, c, d;
  u << ae1, -bf1, af1, be1;
  v << be2, -af2, bf2, ae2;
  a << ae2, af2, af2, -ae2;
  b << ae1, be1, bf1, af1;
  c << be1, bf1, bf1, -be1;
  d << be2, ae2, af2, bf2;
  r.det_u = u.determinant();
  r.det_v = v.determinant();
  r.ab = a * b;
  r.cd = c * d;
  return r;
}

StructureConstants brackets_from_forms(const ConnectionForms& forms) {
  const auto& al = forms.alpha;
  const auto& be = forms.beta;
  StructureConstants c(4);
  auto set = [&c](int i, int j, int k, double v) {
    c(i, j, k) += v;
    c(j, i, k) -= v;
  };
  set(kE1, kF1, kE1, -al[kE1]);
  set(kE1, kF1, kF1, -al[kF1]);
  set(kE1, kE2, kF2, be[kE1]);
  set(kE1, kE2, kF1, -al[kE2]);
  set(kE1, kF2, kE2, -be[kE1]);
  set(kE1, kF2, kF1, -al[kF2]);
  set(kF1, kE2, kF2, be[kF1]);
  set(kF1, kE2, kE1, al[kE2]);
  set(kF1, kF2, kE2, -be[kF1]);
  set(kF1, kF2, kE1, al[kF2]);
  set(kE2, kF2, kE2, -be[kE2]);
  set(kE2, kF2, kF2, -be[kF2]);
  return c;
}

ConnectionFormBuild build_from_connection_forms(const ConnectionForms& forms,
                                                const Tolerance& tol) {
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    scale = std::max({scale, std::abs(forms.alpha[static_cast<size_t>(i)]),
                      std::abs(forms.beta[static_cast<size_t>(i)])});
  }
  if (scale == 0.0) throw std::invalid_argument("alpha and beta must not both vanish");

  ConnectionFormBuild out;
  out.relations = evaluate_relations(forms);
  const double tau = tol.threshold(std::max(1.0, scale * scale));
  for (size_t i = 0; i < out.relations.values.size(); ++i) {
    if (std::abs(out.relations.values[i]) > tau) out.violated.push_back(static_cast<int>(i) + 1);
  }
  const auto& r = out.relations;
  out.matrix_forms_vanish = std::abs(r.det_u) <= tau && std::abs(r.det_v) <= tau &&
                            r.ab.cwiseAbs().maxCoeff() <= tau &&
                            r.cd.cwiseAbs().maxCoeff() <= tau;
  if (out.violated.empty()) {
    out.algebra.emplace(LieAlgebra::trusted(brackets_from_forms(forms)), Matrix::Identity(4, 4),
                        tol);
  }
  return out;
}

}  // namespace liemetric
