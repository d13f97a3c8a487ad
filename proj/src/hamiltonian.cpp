#include "smm/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "smm/errors.hpp"

namespace smm {

void SpinSystem::validate() const {
  if (!std::isfinite(d) || !std::isfinite(e) || !std::isfinite(g) || !std::isfinite(mu_b)) {
    throw std::invalid_argument("spin system parameters must be finite");
  }
  if (g <= 0.0) {
    throw std::invalid_argument("g-factor must be positive");
  }
  if (mu_b <= 0.0) {
    throw std::invalid_argument("Bohr magneton must be positive");
  }
}

bool SpinSystem::rhombicity_warning() const { return std::abs(e) > std::abs(d) / 3.0; }

FieldVector::FieldVector(double b0, double theta, double phi) : b0_(b0), theta_(theta) {
  if (!std::isfinite(b0) || b0 < 0.0) {
    throw std::invalid_argument("field magnitude must be finite and >= 0");
  }
  if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi) {
    throw std::invalid_argument("polar angle must lie in [0, pi]");
  }
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("azimuthal angle must be finite");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi_ = std::fmod(phi, two_pi);
  if (phi_ < 0.0) phi_ += two_pi;
  if (phi_ >= two_pi) phi_ = 0.0;
}

FieldVector FieldVector::along(double b, double theta, double phi) {
  if (b >= 0.0) {
    return FieldVector(b, theta, phi);
  }
  return FieldVector(-b, std::numbers::pi - theta, phi + std::numbers::pi);
}

double FieldVector::bx() const { return b0_ * std::sin(theta_) * std::cos(phi_); }
double FieldVector::by() const { return b0_ * std::sin(theta_) * std::sin(phi_); }
double FieldVector::bz() const { return b0_ * std::cos(theta_); }

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ValidationError("Hermitian matrix must be square and nonempty");
  }
  if (!entries_.allFinite()) {
    throw ValidationError("Hermitian matrix has non-finite entries");
  }
  const double tol = 1e-12 * std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw ValidationError("matrix is not Hermitian: max |h_ij - conj(h_ji)| = " +
                          std::to_string(asym));
  }
}

HermitianMatrix build_hamiltonian(const SpinSystem& system, const FieldVector& field) {
  system.validate();
  const OperatorSet ops = build_operators(system.s);

  ComplexMatrix h = system.d * (ops.sz * ops.sz - ops.s_squared / 3.0);
  h += 0.5 * system.e * (ops.s_plus * ops.s_plus + ops.s_minus * ops.s_minus);

  const double zeeman = system.g * system.mu_b;
  h += zeeman * field.bx() * ops.sx;
  h += zeeman * field.by() * ops.sy;
  h += zeeman * field.bz() * ops.sz;
  return HermitianMatrix(std::move(h));
}

Complex matrix_element_transcribed(const SpinSystem& system, const FieldVector& field,
                                   Projection m, Projection m_prime) {
  const SpinQuantum s = system.s;
  if (!m.valid_for(s) || !m_prime.valid_for(s)) {
    throw std::domain_error("matrix_element_transcribed: projection out of range");
  }
  const double ss = s.casimir();
  const double mb = m.value();
  const double mk = m_prime.value();
  const int delta2 = m.twice() - m_prime.twice();
  const double zeeman = system.g * system.mu_b * field.b0();
  const double sin_t = std::sin(field.theta());

  switch (delta2) {
    case 0:
      return system.d * (mb * mb - ss / 3.0) + zeeman * std::cos(field.theta()) * mb;
    case 2:
      return 0.5 * zeeman * sin_t * std::polar(1.0, -field.phi()) *
             std::sqrt(ss - mk * (mk + 1.0));
    case -2:
      return 0.5 * zeeman * sin_t * std::polar(1.0, field.phi()) *
             std::sqrt(ss - mk * (mk - 1.0));
    case 4:
      return 0.5 * system.e *
             std::sqrt((ss - mk * (mk + 1.0)) * (ss - (mk + 1.0) * (mk + 2.0)));
    case -4:
      return 0.5 * system.e *
             std::sqrt((ss - mk * (mk - 1.0)) * (ss - (mk - 1.0) * (mk - 2.0)));
    default:
      return 0.0;
  }
}

ParityBlockReport parity_block_structure(const HermitianMatrix& h, SpinQuantum s) {
  if (!s.is_integer()) {
    throw std::domain_error("parity blocks are defined for integer spin only");
  }
  if (h.dim() != s.dim()) {
    throw std::invalid_argument("matrix dimension does not match 2s+1");
  }
  ParityBlockReport report;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    auto& block = parity_of(projection_at(s, i)) == Parity::even ? report.even_block
                                                                  : report.odd_block;
    block.push_back(i);
  }
  report.is_block_diagonal = true;
  for (std::size_t i : report.even_block) {
    for (std::size_t j : report.odd_block) {
      if (std::abs(h(i, j)) >= 1e-12 || std::abs(h(j, i)) >= 1e-12) {
        report.is_block_diagonal = false;
      }
    }
  }
  return report;
}

}  // namespace smm
