#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace liemetric {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Numerical rank threshold: tau = max(abs, rel * scale), where scale is the
/// largest singular value (or pivot) of the object being tested.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  double threshold(double scale) const;
  /// Throws std::invalid_argument unless 0 < abs <= rel < 1.
  void check() const;
};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class SingularFrame : public Error {
 public:
  using Error::Error;
};

class FrameMismatch : public Error {
 public:
  using Error::Error;
};

class NotSkew : public Error {
 public:
  using Error::Error;
};

class NotParallel : public Error {
 public:
  using Error::Error;
};

class NotBlockForm : public Error {
 public:
  using Error::Error;
};

class DegeneratePlane : public Error {
 public:
  using Error::Error;
};

}  // namespace liemetric
