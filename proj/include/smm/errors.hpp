#pragma once

#include <stdexcept>
#include <string>

namespace smm {

/// Input that violates a documented contract (non-Hermitian matrix, unnormalized state).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An algorithm did not reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  /// Residual measure at the point of failure (e.g. off-diagonal Frobenius norm).
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Numerical failure at a specific field point of a sweep.
class SweepError : public NumericalError {
 public:
  SweepError(const std::string& what, double achieved, double field_tesla)
      : NumericalError(what, achieved), field_tesla_(field_tesla) {}

  double field_tesla() const { return field_tesla_; }

 private:
  double field_tesla_;
};

}  // namespace smm
