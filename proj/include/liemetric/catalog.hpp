#pragma once

// Built-in metric Lie algebras: the 3- and 4-dimensional solvable families and
// the Kähler / parallel-tensor tables, addressable by stable ASCII names.

#include "liemetric/algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liemetric {

class UnknownEntry : public Error {
 public:
  using Error::Error;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

using ParamMap = std::map<std::string, double>;

/// Admissible interval of one real parameter; missing bounds are infinite.
struct ParamSpec {
  std::string name;
  double default_value = 1.0;
  std::optional<double> lower;
  bool lower_inclusive = false;
  std::optional<double> upper;
  bool upper_inclusive = true;
  bool integer = false;

  bool admits(double v) const;
  /// e.g. "t > 0" or "0 < s <= 1".
  std::string range_text() const;
};

enum class TableKind {
  None,        ///< bare Lie algebra family with the identity metric
  Kahler,      ///< Kähler table: designated complex structures
  NonComplex,  ///< parallel tensors that are not multiples of a complex structure
  Complex,     ///< parallel complex structures J_c on the d-algebras
};

struct DesignatedTensor {
  std::string name;
  Matrix matrix;  ///< endomorphism in the input basis
};

struct CatalogBuild {
  std::string name;
  ParamMap params;  ///< fully resolved, defaults included
  MetricLieAlgebra mla;
  std::vector<DesignatedTensor> tensors;
};

struct CatalogEntry {
  std::string name;
  std::string symbol;  ///< conventional notation
  std::string description;
  TableKind table = TableKind::None;
  std::vector<ParamSpec> params;
  /// Dimension of the parallel space predicted by the classification, if any.
  std::optional<int> expected_parallel_dim(const ParamMap& resolved) const;
};

const std::vector<CatalogEntry>& catalog_list();
/// Throws UnknownEntry.
const CatalogEntry& catalog_entry(const std::string& name);

/// Fills defaults and validates. Throws UnknownEntry / ParamOutOfRange.
ParamMap resolve_params(const CatalogEntry& entry, const ParamMap& params);

CatalogBuild catalog_build(const std::string& name, const ParamMap& params = {});

struct TensorCheck {
  std::string name;
  double residual = 0.0;  ///< max |[gamma_i, H]| in the orthonormal frame
  bool parallel = false;
  bool skew = false;  ///< skew for the metric
  bool complex_structure = false;
};

struct TableVerification {
  std::string name;
  ParamMap params;
  std::vector<TensorCheck> tensors;
  int parallel_dim = 0;
  std::optional<int> expected_dim;
  bool ok = false;
};

TableVerification verify_table_entry(const std::string& name, const ParamMap& params = {});

}  // namespace liemetric
