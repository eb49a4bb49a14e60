#pragma once

#include "liemetric/curvature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace liemetric {

/// Coefficients over e^i ^ e^j (i < j, lexicographic), omega(x, y) = <M x, y>.
struct TwoForm {
  int n = 0;
  Vector coeffs;

  double coeff(int i, int j) const;
};

/// Throws NotSkew.
TwoForm matrix_to_two_form(const Matrix& m, const Tolerance& tol = {});
Matrix two_form_to_matrix(const TwoForm& omega);

/// Operator-valued tensor with `arity` vector arguments; values are stored
/// for every basis multi-index in row-major order.
struct OperatorTensor {
  int n = 0;
  int arity = 0;
  std::vector<Matrix> values;

  const Matrix& at(const std::vector<int>& args) const;
  Matrix& at(const std::vector<int>& args);
  size_t offset(const std::vector<int>& args) const;
};

/// R as an operator-valued 2-tensor.
OperatorTensor curvature_tensor(const CurvatureData& curv);
/// A single left-invariant operator field (no arguments).
OperatorTensor operator_field(const Matrix& m);

/// (nabla_{e_k} T)(args) = [gamma[k], T(args)] - sum_m T(..., gamma[k] arg_m, ...).
OperatorTensor covariant_derivative(const Connection& conn, const OperatorTensor& t, int k);
/// Full differential, one more argument; the direction is the first slot.
OperatorTensor covariant_differential(const Connection& conn, const OperatorTensor& t);

struct HolonomyAlgebra {
  int n = 0;
  std::vector<Matrix> basis;  ///< skew, Frobenius-orthonormal, canonical order
  int level_reached = 0;
  bool stabilized = false;
  std::vector<std::string> warnings;

  int dim() const { return static_cast<int>(basis.size()); }
};

/// Default level cap n(n+1)/2 when max_level < 0.
HolonomyAlgebra holonomy_algebra(const Connection& conn, const CurvatureData& curv,
                                 int max_level = -1);

struct InvariantFactor {
  Subspace subspace;
  bool flat = false;
};

struct InvariantDecomposition {
  std::vector<InvariantFactor> factors;
  std::vector<std::string> warnings;
};

/// Flat part split into lines; the rest split through symmetric commutant
/// elements until every block has scalar symmetric commutant.
InvariantDecomposition invariant_decomposition(const HolonomyAlgebra& hol, std::uint64_t seed = 0,
                                               const Tolerance& tol = {});

enum class FactorKind { Flat, Surface, Irreducible };

struct DeRhamFactor {
  Subspace subspace;  ///< in the orthonormal frame of the connection
  FactorKind kind = FactorKind::Irreducible;
  double curvature = 0.0;  ///< sectional curvature for Surface factors
};

struct DeRhamDecomposition {
  std::vector<DeRhamFactor> factors;
  std::vector<std::string> warnings;
  HolonomyAlgebra holonomy;
};

struct DeRhamOptions {
  int max_level = -1;
  std::uint64_t seed = 0;
};

DeRhamDecomposition derham_report(const MetricLieAlgebra& mla, const DeRhamOptions& opts = {});

std::string describe(const DeRhamFactor& f);
std::string describe(const DeRhamDecomposition& d);

/// Residual of commutator closure: max over pairs of dist([b_i, b_j], span).
double bracket_closure_residual(const HolonomyAlgebra& hol);
/// max |(I - P_W) B P_W| over holonomy elements B.
double invariance_residual(const HolonomyAlgebra& hol, const Subspace& w);

}  // namespace liemetric
