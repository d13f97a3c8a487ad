#pragma once

#include <vector>

#include "smm/spin_algebra.hpp"

namespace smm {

/// Bohr magneton in Kelvin per Tesla (k_B = 1).
inline constexpr double kBohrMagnetonKelvinPerTesla = 0.6717;

/// Giant-spin parameters. Energies in Kelvin.
///
/// Defaults are the Fe8 anisotropy constants from EPR (D = -0.292 K,
/// E = -0.046 K) with g = 2.
struct SpinSystem {
  SpinQuantum s{20};
  double d = -0.292;
  double e = -0.046;
  double g = 2.0;
  double mu_b = kBohrMagnetonKelvinPerTesla;

  /// Throws std::invalid_argument when g <= 0 or mu_b <= 0 or any value is not finite.
  void validate() const;

  /// |E| > |D|/3: legal, but the axis labels no longer follow the usual convention.
  bool rhombicity_warning() const;
};

/// External field in spherical form. b0 in Tesla, angles in radians.
class FieldVector {
 public:
  FieldVector() = default;
  /// Requires b0 >= 0 and 0 <= theta <= pi; phi is reduced to [0, 2pi).
  FieldVector(double b0, double theta, double phi);

  /// Field of signed strength b along the fixed direction (theta, phi). Negative b
  /// flips the direction.
  static FieldVector along(double b, double theta, double phi);

  double b0() const { return b0_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// Cartesian components in Tesla.
  double bx() const;
  double by() const;
  double bz() const;

 private:
  double b0_ = 0.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// Dense Hermitian matrix in the |M_S> basis (ascending M_S).
class HermitianMatrix {
 public:
  /// Throws ValidationError if entries are not Hermitian within 1e-12 (scaled by
  /// the largest entry when that exceeds 1).
  explicit HermitianMatrix(ComplexMatrix entries);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double trace() const { return entries_.trace().real(); }

 private:
  ComplexMatrix entries_;
};

/// D(Sz^2 - S^2/3) + E/2 (S+^2 + S-^2) + g mu_B B.S, built from ladder matrices.
HermitianMatrix build_hamiltonian(const SpinSystem& system, const FieldVector& field);

/// <m|H|m'> written out element by element, independent of build_hamiltonian.
///
/// Diagonal: D[m^2 - s(s+1)/3] + g mu_B B cos(theta) m.
/// m = m'+1: (1/2) g mu_B B sin(theta) e^{-i phi} sqrt(s(s+1) - m'(m'+1)), and the
/// conjugate for m = m'-1.
/// m = m'±2: (1/2) E sqrt[(s(s+1) - m'(m'±1)) (s(s+1) - (m'±1)(m'±2))].
Complex matrix_element_transcribed(const SpinSystem& system, const FieldVector& field,
                                   Projection m, Projection m_prime);

struct ParityBlockReport {
  bool is_block_diagonal = false;
  std::vector<std::size_t> even_block;
  std::vector<std::size_t> odd_block;
};

/// Splits the basis by parity of M_S and checks that no entry couples the classes
/// (|h_ij| < 1e-12 K). Integer spin only.
ParityBlockReport parity_block_structure(const HermitianMatrix& h, SpinQuantum s);

}  // namespace smm
