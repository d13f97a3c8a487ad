#include <cmath>
#include <numbers>

#include "doctest.h"
#include "smm/analysis.hpp"
#include "smm/errors.hpp"
#include "smm/sweep.hpp"
#include "test_support.hpp"

using namespace smm;
using smm::testing::fe8;

TEST_CASE("basis state composition") {
  const SpinQuantum s(20);
  ComplexVector v = ComplexVector::Zero(21);
  v(basis_index(s, Projection(14))) = 1.0;
  const StateComposition c = projection_probabilities(v, s);
  CHECK(c.probability(Projection(14)) == 1.0);
  CHECK(c.dominant == Projection(14));
  CHECK(c.sz_expectation == 7.0);
}

TEST_CASE("equal superposition of +-M") {
  const SpinQuantum s(20);
  ComplexVector v = ComplexVector::Zero(21);
  v(basis_index(s, Projection(20))) = 1.0 / std::sqrt(2.0);
  v(basis_index(s, Projection(-20))) = Complex(0.0, -1.0 / std::sqrt(2.0));
  const StateComposition c = projection_probabilities(v, s);
  CHECK(c.probability(Projection(20)) == doctest::Approx(0.5));
  CHECK(c.probability(Projection(-20)) == doctest::Approx(0.5));
  CHECK(std::abs(c.sz_expectation) < 1e-15);
  // Ties go to the smaller M.
  CHECK(c.dominant == Projection(-20));
  CHECK(hard_axis_symmetry_check(v, s) < 1e-16);
}

TEST_CASE("validation of states") {
  const SpinQuantum s(2);
  CHECK_THROWS_AS(projection_probabilities(ComplexVector::Ones(3), s), ValidationError);
  CHECK_THROWS_AS(projection_probabilities(ComplexVector::Zero(4), s), ValidationError);
  // dominant_projection does not require normalization.
  ComplexVector v(3);
  v << 0.1, 3.0, 0.2;
  CHECK(dominant_projection(v, s) == Projection(0));
}

TEST_CASE("composition of level 3 at 0.1 T") {
  const SpinSystem sys = fe8();
  const EigenSolution sol = solve_at(sys, 0.1, 0.0, 0.0);
  // Reference values from a 40-digit computation.
  CHECK(std::abs(sol.eigenvalues(3) - -11.8567180711695) < 1e-10);
  const StateComposition c = projection_probabilities(sol.vector(3), sys.s);
  CHECK(c.dominant == Projection(18));
  CHECK(std::abs(c.probability(Projection(18)) - 0.986658411585) < 1e-9);
  CHECK(std::abs(c.probability(Projection(14)) - 0.0131858902175) < 1e-9);
  CHECK(std::abs(c.probability(Projection(10)) - 0.000153893601674) < 1e-10);
  CHECK(std::abs(c.probability(Projection(6)) - 1.78263759201e-6) < 1e-11);
  CHECK(std::abs(c.sz_expectation - 8.97300177307) < 1e-9);
  // The level lives in the odd block; even-M weight is exactly zero.
  for (int m = -10; m <= 10; m += 2) CHECK(c.probability(Projection(2 * m)) == 0.0);
}

TEST_CASE("composition is continuous along a sweep away from crossings") {
  SweepGrid g;
  g.b_min = 0.05;
  g.b_max = 0.15;
  g.steps = 41;
  const SweepResult r = sweep_spectrum(fe8(), g);
  for (std::size_t k = 0; k + 1 < r.points.size(); ++k) {
    const auto a = projection_probabilities(r.points[k].vector(3), r.system.s);
    const auto b = projection_probabilities(r.points[k + 1].vector(3), r.system.s);
    CHECK(a.dominant == Projection(18));
    CHECK(std::abs(a.probability(Projection(18)) - b.probability(Projection(18))) < 1e-3);
  }
}

TEST_CASE("hard-axis field keeps +-M balanced") {
  const SpinSystem sys = fe8();
  for (double b : {0.0, 0.5, 1.3, 3.0}) {
    const EigenSolution sol = solve_at(sys, b, std::numbers::pi / 2, 0.0);
    for (std::size_t i = 0; i < sol.dim(); ++i) {
      CHECK(hard_axis_symmetry_check(sol.vector(i), sys.s) < 1e-8);
      CHECK(std::abs(projection_probabilities(sol.vector(i), sys.s).sz_expectation) < 1e-8);
    }
  }
}

TEST_CASE("Arrhenius relaxation") {
  RelaxationParams p;
  p.tau0 = 1e-7;
  p.u = 4.2;
  p.t = 4.2;
  CHECK(relaxation_time(p) == doctest::Approx(1e-7 * std::exp(1.0)).epsilon(1e-15));
  p.u = 29.2;
  CHECK(relaxation_time(p) == doctest::Approx(1.045636377e-4).epsilon(1e-9));
  p.t = 0.0;
  CHECK_THROWS_AS(relaxation_time(p), std::domain_error);
  p.t = 1.0;
  p.tau0 = 0.0;
  CHECK_THROWS_AS(relaxation_time(p), std::domain_error);

  CHECK(barrier_height(fe8()) == doctest::Approx(29.2).epsilon(1e-14));
  SpinSystem half = fe8();
  half.s = SpinQuantum(3);
  CHECK_THROWS_AS(barrier_height(half), std::domain_error);
}
