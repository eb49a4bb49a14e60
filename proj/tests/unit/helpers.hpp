#pragma once

#include "liemetric/catalog.hpp"
#include "liemetric/connection.hpp"
#include "liemetric/linalg.hpp"

#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

using liemetric::Matrix;
using liemetric::Vector;

inline Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
  Matrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Matrix rows(const std::vector<std::vector<double>>& r) {
  Matrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r[0].size()));
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[i][j];
  return m;
}

inline double diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  return liemetric::linalg::max_abs(a - b);
}

inline liemetric::Connection connection_of(const std::string& entry,
                                           const liemetric::ParamMap& p = {}) {
  return liemetric::levi_civita(liemetric::catalog_build(entry, p).mla);
}

/// Residual of span(a) vs span(b) for lists of matrices, in both directions.
inline double span_distance(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  auto stack = [](const std::vector<Matrix>& v) {
    Matrix m(v.empty() ? 0 : v[0].size(), static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i)
      m.col(static_cast<Eigen::Index>(i)) = liemetric::linalg::vec(v[i]);
    return m;
  };
  const liemetric::Tolerance tol;
  const Matrix qa = liemetric::linalg::column_space(stack(a), tol);
  const Matrix qb = liemetric::linalg::column_space(stack(b), tol);
  if (qa.cols() != qb.cols()) return 1e300;
  if (qa.cols() == 0) return 0.0;
  return std::max(liemetric::linalg::containment_residual(qa, qb),
                  liemetric::linalg::containment_residual(qb, qa));
}

/// The algebras fed to tests/oracle/oracle.py, keyed by the oracle case name.
inline liemetric::MetricLieAlgebra oracle_algebra(const std::string& name) {
  using B = std::vector<liemetric::Bracket>;
  const Matrix i4 = Matrix::Identity(4, 4);
  auto make = [](int n, const B& b, const Matrix& g) {
    return liemetric::MetricLieAlgebra(liemetric::make_lie_algebra(n, b), g);
  };
  auto diag = [](std::initializer_list<double> d) {
    Vector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return Matrix(v.asDiagonal());
  };
  const B aff2{{0, 1, 1, 1}, {2, 3, 3, 1}};
  if (name == "d4.2") return make(4, {{1, 2, 3, 1}, {0, 1, 1, -1}, {0, 2, 2, .5}, {0, 3, 3, -.5}}, i4);
  if (name == "d4half") return make(4, {{1, 2, 3, 1}, {0, 1, 1, .5}, {0, 2, 2, .5}, {0, 3, 3, 1}}, i4);
  if (name == "d4p_l1")
    return make(4, {{1, 2, 3, 1}, {0, 1, 1, .5}, {0, 1, 2, -.5}, {0, 2, 1, .5}, {0, 2, 2, .5},
                    {0, 3, 3, 1}}, i4);
  if (name == "R_x_e2") return make(4, {{0, 2, 3, -1}, {0, 3, 2, 1}}, i4);
  if (name == "R2_x_aff") return make(4, {{2, 3, 3, 1}}, i4);
  if (name == "r4p_l1") return make(4, {{0, 1, 1, 1}, {0, 3, 2, 1}, {0, 2, 3, -1}}, i4);
  if (name == "r4p_l2") return make(4, {{0, 1, 1, 2}, {0, 3, 2, 1}, {0, 2, 3, -1}}, i4);
  if (name == "aff_x_aff_s1") return make(4, aff2, i4);
  if (name == "aff_x_aff_s_half") return make(4, aff2, diag({1, 1, .5, .5}));
  if (name == "aff_x_aff_s_quarter") return make(4, aff2, diag({1, 1, .25, .25}));
  if (name == "h3") return make(3, {{0, 1, 2, 1}}, Matrix::Identity(3, 3));
  if (name == "d4lambda_1") return make(4, {{0, 1, 2, 1}, {0, 3, 0, -1}, {2, 3, 2, -1}}, i4);
  if (name == "skewed_metric_h3")
    return make(3, {{0, 1, 2, 1}}, rows({{2, .5, 0}, {.5, 1, .25}, {0, .25, 3}}));
  throw std::out_of_range(name);
}

inline Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

}  // namespace testutil
