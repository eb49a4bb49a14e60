#pragma once

// Analysis reports: the algebra-specification file format, a plain-data report
// covering every module, lossless JSON serialization and human-readable text.

#include "liemetric/catalog.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liemetric {

/// Malformed specification or report document.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Parsed algebra-specification file. The metric is checked for symmetry and
/// positive definiteness here; the Jacobi identity is left to the analysis.
struct AlgebraInput {
  int dim = 0;
  std::vector<Bracket> brackets;
  Matrix gram;
  std::optional<Tolerance> tolerance;
  std::vector<DesignatedTensor> tensors;  ///< optional "tensors" field, input basis
};

/// Fields: dim, brackets [{i, j, k, value}] (0-based, i < j), metric ("identity",
/// n diagonal entries, or an n x n matrix as nested rows or n*n row-major
/// numbers), optional tolerance {rel, abs}, optional tensors [{name, matrix}].
/// Throws SpecError naming the violated requirement.
AlgebraInput parse_algebra_spec(const std::string& text);
AlgebraInput algebra_input_from_catalog(const CatalogBuild& build);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digest(const std::string& bytes);

using Rows = std::vector<std::vector<double>>;

Rows to_rows(const Matrix& m);

struct InputEcho {
  std::string source;  ///< "entry" or "file"
  std::string entry;
  std::map<std::string, double> params;
  std::string file;
  std::string digest;

  bool operator==(const InputEcho&) const = default;
};

struct BracketRecord {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;

  bool operator==(const BracketRecord&) const = default;
};

struct AlgebraSection {
  int dim = 0;
  std::vector<BracketRecord> brackets;
  Rows gram;
  bool valid = false;
  std::vector<std::string> violations;
  double max_antisymmetry_residual = 0.0;
  double max_jacobi_residual = 0.0;
  int derived_dim = 0;
  int center_dim = 0;

  bool operator==(const AlgebraSection&) const = default;
};

struct ConnectionSection {
  Rows frame;
  std::vector<Rows> gamma;
  double metric_residual = 0.0;
  double torsion_residual = 0.0;

  bool operator==(const ConnectionSection&) const = default;
};

struct SpectralRecord {
  std::vector<double> angles;
  int kernel_dim = 0;
  bool complex_multiple = false;
  bool complex_structure = false;

  bool operator==(const SpectralRecord&) const = default;
};

struct TensorRecord {
  std::string name;
  Rows matrix;  ///< orthonormal frame
  double residual = 0.0;
  bool parallel = false;
  bool complex_structure = false;

  bool operator==(const TensorRecord&) const = default;
};

struct ParallelSection {
  int dim = 0;
  std::vector<Rows> basis;
  std::vector<SpectralRecord> spectral;
  bool has_non_complex_multiple = false;
  std::vector<TensorRecord> designated;
  std::optional<int> expected_dim;

  bool operator==(const ParallelSection&) const = default;
};

struct PairOperatorRecord {
  int i = 0;
  int j = 0;
  Rows op;
  std::vector<double> two_form;

  bool operator==(const PairOperatorRecord&) const = default;
};

/// [gamma_k, R(f_i, f_j)] as a 2-form: the derivative of R(f_i, f_j) viewed as
/// a left-invariant operator field.
struct DerivativeRecord {
  int k = 0;
  int i = 0;
  int j = 0;
  std::vector<double> two_form;

  bool operator==(const DerivativeRecord&) const = default;
};

struct CurvatureSection {
  std::vector<PairOperatorRecord> operators;  ///< i < j
  std::vector<DerivativeRecord> derivatives;
  Rows ricci;
  double scalar = 0.0;
  Rows sectional;  ///< K(f_i, f_j), zero diagonal
  double bianchi_residual = 0.0;
  double pair_symmetry_residual = 0.0;

  bool operator==(const CurvatureSection&) const = default;
};

struct FingerprintRecord {
  std::string tensor;
  std::vector<double> ric_charpoly;
  std::vector<double> h_charpoly;
  std::optional<std::vector<double>> h_on_derived_charpoly;
  std::optional<std::vector<double>> h_on_center_charpoly;
  std::vector<double> killing_charpoly;
  std::vector<int> dims;  ///< algebra, derived, center, derived of derived, parallel

  bool operator==(const FingerprintRecord&) const = default;
};

struct HolonomySection {
  int dim = 0;
  int level_reached = 0;
  bool stabilized = false;
  std::vector<Rows> basis;
  double closure_residual = 0.0;

  bool operator==(const HolonomySection&) const = default;
};

struct DerhamFactorRecord {
  std::string kind;
  int dim = 0;
  std::optional<double> curvature;
  Rows basis;  ///< columns span the factor, orthonormal frame

  bool operator==(const DerhamFactorRecord&) const = default;
};

struct DerhamSection {
  std::vector<DerhamFactorRecord> factors;
  std::string summary;
  std::string note;

  bool operator==(const DerhamSection&) const = default;
};

struct Diagnostics {
  std::vector<std::string> warnings;
  std::map<std::string, double> residuals;

  bool operator==(const Diagnostics&) const = default;
};

struct AnalysisReport {
  InputEcho input;
  double tol_rel = 0.0;
  double tol_abs = 0.0;
  std::optional<AlgebraSection> algebra;
  std::optional<ConnectionSection> connection;
  std::optional<ParallelSection> parallel;
  std::optional<CurvatureSection> curvature;
  std::optional<std::vector<FingerprintRecord>> fingerprints;
  std::optional<HolonomySection> holonomy;
  std::optional<DerhamSection> derham;
  Diagnostics diagnostics;

  bool operator==(const AnalysisReport&) const = default;
};

struct Sections {
  bool connection = false;
  bool parallel = false;
  bool curvature = false;
  bool fingerprint = false;
  bool holonomy = false;
  bool derham = false;

  static Sections all() { return {true, true, true, true, true, true}; }
};

struct AnalysisOptions {
  std::optional<Tolerance> tolerance;  ///< overrides the input tolerance
  std::uint64_t seed = 0;
  int max_level = -1;
};

/// The algebra section is always filled; other sections only when the
/// structure constants form a Lie algebra.
AnalysisReport analyze(const AlgebraInput& input, const InputEcho& echo, const Sections& sections,
                       const AnalysisOptions& opts = {});

/// Compact JSON with full double precision; no timestamps.
std::string serialize(const AnalysisReport& report);
/// Throws SpecError.
AnalysisReport parse_report(const std::string& text);

/// Six significant digits, one matrix row per line.
std::string render_text(const AnalysisReport& report);
std::string format_number(double x);

}  // namespace liemetric
