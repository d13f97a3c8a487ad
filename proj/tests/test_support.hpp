#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "smm/eigensolver.hpp"
#include "smm/hamiltonian.hpp"

namespace smm::testing {

/// Fe8 with the EPR anisotropy constants, optionally with E switched off.
inline SpinSystem fe8(double e = -0.046) {
  SpinSystem s;
  s.s = SpinQuantum(20);
  s.d = -0.292;
  s.e = e;
  s.g = 2.0;
  s.mu_b = 0.6717;
  return s;
}

/// Dense random Hermitian matrix with entries of order one.
inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  return 0.5 * (a + a.adjoint());
}

/// Reference eigenvalues from Eigen's tridiagonal QR solver, kept independent of
/// the Jacobi implementation under test.
inline RealVector reference_eigenvalues(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline double off_parity_probability(const ComplexVector& v, std::size_t parity_of_index) {
  double p = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (static_cast<std::size_t>(i % 2) != parity_of_index) p += std::norm(v(i));
  }
  return p;
}

}  // namespace smm::testing
