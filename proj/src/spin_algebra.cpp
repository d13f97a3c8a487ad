#include "smm/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace smm {

namespace {

int twice_from_value(double x, const char* what) {
  const double twice = 2.0 * x;
  const double rounded = std::round(twice);
  if (!std::isfinite(x) || std::abs(twice - rounded) > 1e-9) {
    throw std::domain_error(std::string(what) + " must be a multiple of 1/2, got " +
                            std::to_string(x));
  }
  return static_cast<int>(rounded);
}

}  // namespace

SpinQuantum::SpinQuantum(int twice_s) : twice_(twice_s) {
  if (twice_s < 0) {
    throw std::domain_error("spin quantum number must be nonnegative");
  }
}

SpinQuantum SpinQuantum::from_value(double s) {
  return SpinQuantum(twice_from_value(s, "spin quantum number"));
}

Projection Projection::from_value(double m) {
  return Projection(twice_from_value(m, "spin projection"));
}

bool Projection::valid_for(SpinQuantum s) const {
  return twice_ >= -s.twice() && twice_ <= s.twice() && (s.twice() - twice_) % 2 == 0;
}

std::size_t basis_index(SpinQuantum s, Projection m) {
  if (!m.valid_for(s)) {
    throw std::domain_error("projection " + to_string(m) + " is not valid for s = " +
                            std::to_string(s.value()));
  }
  return static_cast<std::size_t>((m.twice() + s.twice()) / 2);
}

Projection projection_at(SpinQuantum s, std::size_t index) {
  if (index >= s.dim()) {
    throw std::out_of_range("basis index out of range");
  }
  return Projection(2 * static_cast<int>(index) - s.twice());
}

std::string to_string(Projection m) {
  if (m.is_integer()) {
    return std::to_string(m.twice() / 2);
  }
  // |2m| odd: print as x.5 with the sign kept for -0.5.
  const int whole = std::abs(m.twice()) / 2;
  return std::string(m.twice() < 0 ? "-" : "") + std::to_string(whole) + ".5";
}

double ladder_element(SpinQuantum s, Projection m, LadderDirection direction) {
  if (!m.valid_for(s)) {
    throw std::domain_error("ladder_element: projection " + to_string(m) +
                            " invalid for s = " + std::to_string(s.value()));
  }
  const int step = direction == LadderDirection::raise ? 2 : -2;
  if (!Projection(m.twice() + step).valid_for(s)) {
    return 0.0;
  }
  // Work in doubled units so the radicand is an exact integer: 4[s(s+1) - m(m±1)].
  const long ts = s.twice();
  const long tm = m.twice();
  const long radicand4 = ts * (ts + 2) - tm * (tm + step);
  return 0.5 * std::sqrt(static_cast<double>(radicand4));
}

Parity parity_of(Projection m) {
  if (!m.is_integer()) {
    throw std::domain_error("parity is only defined for integer projections, got " +
                            to_string(m));
  }
  return (m.twice() / 2) % 2 == 0 ? Parity::even : Parity::odd;
}

OperatorSet build_operators(SpinQuantum s) {
  const auto n = static_cast<Eigen::Index>(s.dim());
  OperatorSet ops;
  ops.sz = ComplexMatrix::Zero(n, n);
  ops.s_plus = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Projection m = projection_at(s, static_cast<std::size_t>(i));
    ops.sz(i, i) = m.value();
    if (i + 1 < n) {
      ops.s_plus(i + 1, i) = ladder_element(s, m, LadderDirection::raise);
    }
  }
  ops.s_minus = ops.s_plus.adjoint();
  ops.sx = 0.5 * (ops.s_plus + ops.s_minus);
  ops.sy = Complex(0.0, -0.5) * (ops.s_plus - ops.s_minus);
  ops.s_squared = s.casimir() * ComplexMatrix::Identity(n, n);
  return ops;
}

}  // namespace smm
