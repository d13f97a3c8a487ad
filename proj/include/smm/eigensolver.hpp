#pragma once

#include <cstddef>
#include <vector>

#include "smm/hamiltonian.hpp"
#include "smm/spin_algebra.hpp"

namespace smm {

/// Ascending eigenvalues and orthonormal eigenvectors.
///
/// Column i of `eigenvectors` holds the coefficients c_{i,M} in ascending-M order.
/// In every column the entry of largest magnitude is real and nonnegative (the
/// first such entry on ties). Vectors inside a degenerate cluster are orthonormal
/// but otherwise arbitrary.
struct EigenSolution {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }
  ComplexVector vector(std::size_t i) const {
    return eigenvectors.col(static_cast<Eigen::Index>(i));
  }
};

struct JacobiOptions {
  int max_sweeps = 100;
  /// Stop once the off-diagonal Frobenius norm is below this times ||H||_F.
  double relative_tolerance = 1e-14;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Throws NumericalError (carrying the achieved off-diagonal norm) if the sweep cap
/// is hit before convergence. Entries that are exactly zero and remain decoupled
/// under the rotations stay exactly zero, so block structure is preserved.
EigenSolution eigh(const HermitianMatrix& h, const JacobiOptions& options = {});

/// Same, for an unchecked matrix; throws ValidationError when it is not Hermitian.
EigenSolution eigh(const ComplexMatrix& h, const JacobiOptions& options = {});

/// Orthogonal change of basis that block-diagonalizes a matrix by exact symmetries.
///
/// Two structural symmetries are recognized: couplings only between basis indices
/// of equal parity, and invariance under the index reversal i -> n-1-i (optionally
/// with alternating signs), which for spin matrices is M -> -M. Columns of `basis`
/// are grouped by sector; `sector_sizes` gives the block sizes in column order.
struct SymmetrySectors {
  Eigen::MatrixXd basis;
  std::vector<std::size_t> sector_sizes;
  bool parity = false;
  bool reflection = false;
  int reflection_sign_pattern = 0;  // 0: none, +1: plain reversal, -1: alternating signs

  std::size_t count() const { return sector_sizes.size(); }
};

/// Symmetries are accepted when violated by at most 1e-14 * max|h_ij|.
SymmetrySectors detect_symmetry_sectors(const ComplexMatrix& h);

/// Diagonalizes each symmetry sector separately and merges the spectra.
///
/// Eigenvectors carry the exact symmetry of their sector: off-parity coefficients
/// are exactly zero and reflection partners have identical magnitudes.
EigenSolution eigh_symmetry_adapted(const HermitianMatrix& h,
                                    const JacobiOptions& options = {});

}  // namespace smm
