#pragma once

#include <vector>

#include "smm/hamiltonian.hpp"
#include "smm/spin_algebra.hpp"

namespace smm {

/// |c_M|^2 for one state, with its dominant projection and <Sz>.
struct StateComposition {
  SpinQuantum s{0};
  std::vector<double> probabilities;  // ascending M_S
  Projection dominant{0};
  double sz_expectation = 0.0;

  double probability(Projection m) const;
};

/// Throws ValidationError if |‖c‖ - 1| > 1e-8 or the length is not 2s+1.
StateComposition projection_probabilities(const ComplexVector& state, SpinQuantum s);

/// Projection with the largest |c_M|^2; the smallest M_S wins ties. No
/// normalization requirement.
Projection dominant_projection(const ComplexVector& state, SpinQuantum s);

/// max_M |P(M) - P(-M)|.
double hard_axis_symmetry_check(const ComplexVector& state, SpinQuantum s);

struct RelaxationParams {
  double tau0 = 1e-7;  // seconds
  double u = 0.0;      // Kelvin
  double t = 4.2;      // Kelvin
};

/// Arrhenius law tau = tau0 exp(U / T), with U and T in Kelvin.
double relaxation_time(const RelaxationParams& p);

/// Uniaxial barrier |D| S^2 for integer S.
double barrier_height(const SpinSystem& system);

}  // namespace smm
