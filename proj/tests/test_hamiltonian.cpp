#include <cmath>
#include <numbers>

#include "doctest.h"
#include "smm/errors.hpp"
#include "smm/hamiltonian.hpp"
#include "test_support.hpp"

using namespace smm;
using smm::testing::fe8;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix transcribed(const SpinSystem& sys, const FieldVector& f) {
  const auto n = static_cast<Eigen::Index>(sys.s.dim());
  ComplexMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      h(i, j) = matrix_element_transcribed(sys, f, projection_at(sys.s, static_cast<std::size_t>(i)),
                                           projection_at(sys.s, static_cast<std::size_t>(j)));
  return h;
}

Complex element(const HermitianMatrix& h, SpinQuantum s, int m, int mp) {
  return h(basis_index(s, Projection(2 * m)), basis_index(s, Projection(2 * mp)));
}

}  // namespace

TEST_CASE("zero-field diagonal") {
  const SpinSystem sys = fe8(0.0);
  const HermitianMatrix h = build_hamiltonian(sys, FieldVector(0.0, 0.0, 0.0));
  // D (100 - 110/3) for M = +-10.
  CHECK(element(h, sys.s, 10, 10).real() == doctest::Approx(-18.49333333333333).epsilon(1e-14));
  CHECK(element(h, sys.s, -10, -10).real() == doctest::Approx(-18.49333333333333).epsilon(1e-14));
  CHECK(element(h, sys.s, 0, 0).real() == doctest::Approx(0.292 * 110.0 / 3.0).epsilon(1e-14));
  // Trace of D(Sz^2 - S(S+1)/3) vanishes: sum M^2 = 770 = 21 * 110 / 3.
  CHECK(std::abs(h.trace()) < 1e-12);
}

TEST_CASE("transverse Zeeman element") {
  const SpinSystem sys = fe8(0.0);
  const HermitianMatrix h = build_hamiltonian(sys, FieldVector(1.0, kPi / 2, 0.0));
  // (1/2) g mu_B B sqrt(110 - 9*10) = 0.6717 * sqrt(20)
  const double expected = 0.6717 * std::sqrt(20.0);
  CHECK(std::abs(element(h, sys.s, 10, 9) - expected) < 1e-12);
  CHECK(std::abs(element(h, sys.s, 9, 10) - expected) < 1e-12);
  CHECK(expected == doctest::Approx(3.003934).epsilon(1e-6));
}

TEST_CASE("rhombic element") {
  const SpinSystem sys = fe8();
  const HermitianMatrix h = build_hamiltonian(sys, FieldVector(0.0, 0.0, 0.0));
  // (1/2) E sqrt[(110 - 8*9)(110 - 9*10)]
  const double expected = 0.5 * -0.046 * std::sqrt(38.0 * 20.0);
  CHECK(std::abs(element(h, sys.s, 10, 8) - expected) < 1e-14);
  CHECK(std::abs(element(h, sys.s, -8, -10) - expected) < 1e-14);
  CHECK(element(h, sys.s, 10, 7) == Complex(0.0));
  CHECK(element(h, sys.s, 10, 9) == Complex(0.0));
}

TEST_CASE("phase of the transverse field") {
  const SpinSystem sys = fe8(0.0);
  const HermitianMatrix h = build_hamiltonian(sys, FieldVector(0.5, kPi / 2, kPi / 2));
  // By only: <m+1|H|m> = (1/2) g mu_B B (-i) sqrt(...)
  const Complex e = element(h, sys.s, 1, 0);
  CHECK(std::abs(e.real()) < 1e-15);
  CHECK(e.imag() == doctest::Approx(-0.5 * 2.0 * 0.6717 * 0.5 * std::sqrt(110.0)).epsilon(1e-13));
}

TEST_CASE("operator form matches the element-wise transcription") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    SpinSystem sys;
    sys.s = SpinQuantum(static_cast<int>(u(rng) * 21.0));
    sys.d = -1.0 + 2.0 * u(rng);
    sys.e = -0.3 + 0.6 * u(rng);
    sys.g = 1.5 + u(rng);
    const FieldVector f(3.0 * u(rng), kPi * u(rng), 2.0 * kPi * u(rng));
    const HermitianMatrix h = build_hamiltonian(sys, f);
    const ComplexMatrix t = transcribed(sys, f);
    const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
    CAPTURE(trial);
    CHECK((h.entries() - t).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
}

TEST_CASE("Hermiticity and exact trace") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const SpinSystem sys = fe8(-0.1 * u(rng));
    const FieldVector f(3.0 * u(rng), kPi * u(rng), 2.0 * kPi * u(rng));
    const HermitianMatrix h = build_hamiltonian(sys, f);
    CHECK((h.entries() - h.entries().adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(h.trace()) < 1e-12);
  }
}

TEST_CASE("parity blocks for longitudinal fields") {
  const SpinSystem sys = fe8();
  for (double b : {0.0, 0.3, 2.7}) {
    const ParityBlockReport r =
        parity_block_structure(build_hamiltonian(sys, FieldVector(b, 0.0, 0.0)), sys.s);
    CHECK(r.is_block_diagonal);
    CHECK(r.even_block.size() == 11);
    CHECK(r.odd_block.size() == 10);
  }
  const ParityBlockReport tilted =
      parity_block_structure(build_hamiltonian(sys, FieldVector(0.3, 0.1, 0.0)), sys.s);
  CHECK_FALSE(tilted.is_block_diagonal);
}

TEST_CASE("uniaxial longitudinal Hamiltonian is diagonal") {
  const SpinSystem sys = fe8(0.0);
  const HermitianMatrix h = build_hamiltonian(sys, FieldVector(1.7, 0.0, 0.0));
  const ComplexMatrix off = h.entries() - ComplexMatrix(h.entries().diagonal().asDiagonal());
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(FieldVector(-1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FieldVector(1.0, 4.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FieldVector(std::nan(""), 0.0, 0.0), std::invalid_argument);
  CHECK(FieldVector(1.0, 0.5, -kPi / 2).phi() == doctest::Approx(1.5 * kPi));

  const FieldVector flipped = FieldVector::along(-2.0, 0.0, 0.0);
  CHECK(flipped.bz() == doctest::Approx(-2.0));

  SpinSystem bad = fe8();
  bad.g = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = fe8();
  bad.mu_b = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  SpinSystem rhombic = fe8();
  rhombic.e = -0.2;
  CHECK(rhombic.rhombicity_warning());
  CHECK_FALSE(fe8().rhombicity_warning());

  ComplexMatrix m = ComplexMatrix::Identity(3, 3);
  m(0, 1) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(HermitianMatrix{m}, ValidationError);
}
