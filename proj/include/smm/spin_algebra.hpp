#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace smm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Spin quantum number s, stored as the integer 2s so half-integers are exact.
class SpinQuantum {
 public:
  explicit SpinQuantum(int twice_s);

  /// Accepts 0, 0.5, 1, ...; anything else is a domain error.
  static SpinQuantum from_value(double s);

  int twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  bool is_integer() const { return twice_ % 2 == 0; }
  /// Basis dimension 2s+1.
  std::size_t dim() const { return static_cast<std::size_t>(twice_) + 1; }
  double casimir() const { return value() * (value() + 1.0); }

  friend bool operator==(SpinQuantum, SpinQuantum) = default;

 private:
  int twice_;
};

/// Spin projection M_S, stored as 2m.
class Projection {
 public:
  explicit Projection(int twice_m) : twice_(twice_m) {}

  static Projection from_value(double m);

  int twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  bool is_integer() const { return twice_ % 2 == 0; }

  /// True when -s <= m <= s and s - m is an integer.
  bool valid_for(SpinQuantum s) const;

  friend auto operator<=>(Projection, Projection) = default;

 private:
  int twice_;
};

/// Basis position of m in the ascending ordering M_S = -s, ..., +s.
std::size_t basis_index(SpinQuantum s, Projection m);
Projection projection_at(SpinQuantum s, std::size_t index);

/// "-3", "7", "-1.5": integer projections print without a fractional part.
std::string to_string(Projection m);

enum class LadderDirection { raise, lower };
enum class Parity { even, odd };

/// <m±1|S±|m> = sqrt(s(s+1) - m(m±1)); exactly zero past the ends of the ladder.
double ladder_element(SpinQuantum s, Projection m, LadderDirection direction);

/// Even/odd class of an integer projection. Half-integer m is a domain error.
Parity parity_of(Projection m);

struct OperatorSet {
  ComplexMatrix sx;
  ComplexMatrix sy;
  ComplexMatrix sz;
  ComplexMatrix s_plus;
  ComplexMatrix s_minus;
  ComplexMatrix s_squared;
};

OperatorSet build_operators(SpinQuantum s);

}  // namespace smm
