#pragma once

#include "liemetric/connection.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liemetric {

/// Basis of {H skew : [nabla_x, H] = 0 for all x}, orthonormal in the
/// Frobenius inner product and expressed in the connection frame.
struct ParallelBasis {
  int n = 0;
  std::vector<Matrix> elements;
  double max_commutator_residual = 0.0;

  int dim() const { return static_cast<int>(elements.size()); }
};

ParallelBasis parallel_space(const Connection& conn);

/// max_i |[gamma[i], h]|.
double parallel_residual(const Connection& conn, const Matrix& h);
bool is_parallel(const Connection& conn, const Matrix& h);

/// Re-expresses an endomorphism given in the input basis in `frame` (P^-1 H P).
Matrix to_frame(const Matrix& h, const Frame& frame);

struct RotationPair {
  double angle = 0.0;  ///< a >= 0 with H v = a w, H w = -a v
  Matrix plane;        ///< n x 2, columns (v, w)
};

/// Normal form of a skew matrix: rotation planes and kernel.
struct SpectralClass {
  std::vector<RotationPair> rotation_pairs;
  Subspace kernel;
  bool is_complex_multiple = false;  ///< H^2 = -a^2 I with a > 0
  bool is_complex_structure = false;  ///< H^2 = -I
};

/// Throws NotSkew for non-skew input.
SpectralClass classify_element(const Matrix& h, const Tolerance& tol = {});

struct WitnessSearch {
  bool found = false;
  std::optional<Matrix> witness;
  std::optional<SpectralClass> spectral;
};

/// Searches basis elements, pairwise combinations with coefficients {1, -1, 2}
/// and then 8 seeded random combinations for a nonzero element that is not a
/// multiple of a complex structure.
WitnessSearch contains_non_complex_multiple(const ParallelBasis& basis, std::uint64_t seed = 0,
                                            const Tolerance& tol = {});

struct FingerprintDims {
  int algebra = 0;
  int derived = 0;
  int center = 0;
  int derived_of_derived = 0;
  int parallel = 0;

  bool operator==(const FingerprintDims&) const = default;
};

/// Isometric-isomorphism invariants of a pair (metric Lie algebra, parallel H).
/// Characteristic polynomials are stored highest degree first; a restriction
/// to a subspace H does not preserve is recorded as std::nullopt.
struct Fingerprint {
  std::vector<double> ric_charpoly;
  std::vector<double> h_charpoly;
  std::optional<std::vector<double>> h_on_derived_charpoly;
  std::optional<std::vector<double>> h_on_center_charpoly;
  /// Killing form as an operator through the metric.
  std::vector<double> killing_charpoly;
  FingerprintDims dims;
};

/// `h` is given in the orthonormal frame of `mla`. Throws NotParallel.
Fingerprint fingerprint(const MetricLieAlgebra& mla, const Matrix& h);

enum class Verdict { Distinct, Inconclusive };

struct Distinction {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
};

struct AlgebraWithTensor {
  MetricLieAlgebra mla;
  Matrix h;  ///< in the orthonormal frame of mla
};

/// Never concludes equivalence: fingerprints are necessary conditions only.
Distinction distinguish(const AlgebraWithTensor& a, const AlgebraWithTensor& b,
                        const Tolerance& tol = {});
Distinction compare_fingerprints(const Fingerprint& a, const Fingerprint& b,
                                 const Tolerance& tol = {});

}  // namespace liemetric
