#include "smm/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "smm/errors.hpp"

namespace smm {

double StateComposition::probability(Projection m) const {
  return probabilities[basis_index(s, m)];
}

StateComposition projection_probabilities(const ComplexVector& state, SpinQuantum s) {
  if (static_cast<std::size_t>(state.size()) != s.dim()) {
    throw ValidationError("state length " + std::to_string(state.size()) +
                          " does not match 2s+1 = " + std::to_string(s.dim()));
  }
  const double norm = state.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-8) {
    throw ValidationError("state is not normalized: norm = " + std::to_string(norm));
  }
  StateComposition out;
  out.s = s;
  out.probabilities.resize(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double p = std::norm(state(static_cast<Eigen::Index>(i)));
    out.probabilities[i] = p;
    out.sz_expectation += projection_at(s, i).value() * p;
  }
  out.dominant = dominant_projection(state, s);
  return out;
}

Projection dominant_projection(const ComplexVector& state, SpinQuantum s) {
  std::size_t best = 0;
  double best_p = -1.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double p = std::norm(state(static_cast<Eigen::Index>(i)));
    if (p > best_p) {
      best_p = p;
      best = i;
    }
  }
  return projection_at(s, best);
}

double hard_axis_symmetry_check(const ComplexVector& state, SpinQuantum s) {
  const auto n = static_cast<Eigen::Index>(s.dim());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(std::norm(state(i)) - std::norm(state(n - 1 - i))));
  }
  return worst;
}

double relaxation_time(const RelaxationParams& p) {
  if (!(p.t > 0.0)) {
    throw std::domain_error("temperature must be positive");
  }
  if (!(p.tau0 > 0.0)) {
    throw std::domain_error("tau0 must be positive");
  }
  return p.tau0 * std::exp(p.u / p.t);
}

double barrier_height(const SpinSystem& system) {
  if (!system.s.is_integer()) {
    throw std::domain_error("barrier_height expects an integer spin");
  }
  const double s = system.s.value();
  return std::abs(system.d) * s * s;
}

}  // namespace smm
