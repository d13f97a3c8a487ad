#include "smm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "smm/analysis.hpp"
#include "smm/errors.hpp"

namespace smm {

void SweepGrid::validate() const {
  if (!std::isfinite(b_min) || !std::isfinite(b_max) || b_min > b_max) {
    throw std::invalid_argument("sweep grid needs finite b_min <= b_max");
  }
  if (steps < 2) {
    throw std::invalid_argument("sweep grid needs at least 2 steps");
  }
  // Reuse FieldVector's angle checks.
  (void)FieldVector(0.0, theta, phi);
}

double SweepGrid::field(std::size_t k) const {
  const double b = b_min + (b_max - b_min) * static_cast<double>(k) /
                               static_cast<double>(steps - 1);
  const double scale = std::max(std::abs(b_min), std::abs(b_max));
  return std::abs(b) <= 1e-12 * scale ? 0.0 : b;
}

std::optional<std::size_t> SweepGrid::zero_field_index() const {
  for (std::size_t k = 0; k < steps; ++k) {
    if (field(k) == 0.0) return k;
  }
  return std::nullopt;
}

double SweepResult::track_energy(std::size_t track, std::size_t k) const {
  return points[k].eigenvalues(static_cast<Eigen::Index>(state_of_track[k][track]));
}

ComplexVector SweepResult::track_vector(std::size_t track, std::size_t k) const {
  return points[k].vector(state_of_track[k][track]);
}

StateMatching match_states(const EigenSolution& from, const EigenSolution& to) {
  const std::size_t n = from.dim();
  if (to.dim() != n) {
    throw std::invalid_argument("match_states: dimension mismatch");
  }
  const Eigen::MatrixXd overlap = (from.eigenvectors.adjoint() * to.eigenvectors).cwiseAbs();

  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  candidates.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      candidates.emplace_back(overlap(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)),
                              a, b);
    }
  }
  // Descending overlap; index order breaks ties deterministically.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });

  StateMatching m;
  m.next.assign(n, n);
  m.overlap.assign(n, 0.0);
  std::vector<bool> taken(n, false);
  std::size_t assigned = 0;
  for (const auto& [value, a, b] : candidates) {
    if (m.next[a] != n || taken[b]) continue;
    m.next[a] = b;
    m.overlap[a] = value;
    taken[b] = true;
    if (++assigned == n) break;
  }
  m.min_overlap = n == 0 ? 1.0 : *std::min_element(m.overlap.begin(), m.overlap.end());
  return m;
}

namespace {

TrackAssignment chain(const std::vector<StateMatching>& segments, std::size_t n) {
  TrackAssignment out;
  out.state_of_track.resize(segments.size() + 1);
  out.state_of_track[0].resize(n);
  std::iota(out.state_of_track[0].begin(), out.state_of_track[0].end(), std::size_t{0});
  for (std::size_t k = 0; k < segments.size(); ++k) {
    auto& next = out.state_of_track[k + 1];
    next.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      next[t] = segments[k].next[out.state_of_track[k][t]];
    }
    out.segment_min_overlap.push_back(segments[k].min_overlap);
    if (segments[k].min_overlap < kTrackingOverlapThreshold) {
      out.flagged_segments.push_back(k);
    }
  }
  return out;
}

StateMatching compose(const StateMatching& first, const StateMatching& second) {
  StateMatching out;
  const std::size_t n = first.next.size();
  out.next.resize(n);
  out.overlap.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    out.next[r] = second.next[first.next[r]];
    out.overlap[r] = std::min(first.overlap[r], second.overlap[first.next[r]]);
  }
  out.min_overlap = std::min(first.min_overlap, second.min_overlap);
  return out;
}

// Bisects [b_lo, b_hi] until every matched overlap clears the threshold.
StateMatching match_refined(const SpinSystem& system, const SweepGrid& grid, double b_lo,
                            const EigenSolution& lo, double b_hi, const EigenSolution& hi,
                            int depth_left) {
  StateMatching direct = match_states(lo, hi);
  if (direct.min_overlap >= kTrackingOverlapThreshold || depth_left == 0) {
    return direct;
  }
  const double b_mid = 0.5 * (b_lo + b_hi);
  const EigenSolution mid = solve_at(system, b_mid, grid.theta, grid.phi);
  return compose(match_refined(system, grid, b_lo, lo, b_mid, mid, depth_left - 1),
                 match_refined(system, grid, b_mid, mid, b_hi, hi, depth_left - 1));
}

std::vector<Projection> zero_field_labels(const SweepResult& r) {
  const SpinQuantum s = r.system.s;
  const auto zero = r.grid.zero_field_index();
  const std::size_t k0 = zero.value_or(0);
  std::vector<Projection> labels;
  for (std::size_t t = 0; t < r.track_count(); ++t) {
    Projection label = dominant_projection(r.track_vector(t, k0), s);
    if (zero && k0 + 1 < r.points.size()) {
      // Near-degenerate doublets at B = 0 have no signed dominant M; the field at
      // the next point polarizes them.
      const Projection polarized = dominant_projection(r.track_vector(t, k0 + 1), s);
      const int magnitude = std::abs(label.twice());
      label = Projection(polarized.twice() < 0 ? -magnitude : magnitude);
    }
    labels.push_back(label);
  }
  return labels;
}

template <bool Parallel>
std::vector<EigenSolution> diagonalize_points(const SpinSystem& system, const SweepGrid& grid) {
  system.validate();
  grid.validate();
  const std::size_t n = grid.steps;
  std::vector<EigenSolution> points(n);
  std::vector<std::exception_ptr> failures(n);
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
  for (long k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      points[idx] = solve_at(system, grid.field(idx), grid.theta, grid.phi);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!failures[k]) continue;
    const double b = grid.field(k);
    try {
      std::rethrow_exception(failures[k]);
    } catch (const NumericalError& e) {
      throw SweepError(std::string(e.what()) + " at B = " + std::to_string(b) + " T",
                       e.achieved(), b);
    } catch (const std::exception& e) {
      throw SweepError(std::string(e.what()) + " at B = " + std::to_string(b) + " T", 0.0, b);
    }
  }
  return points;
}

}  // namespace

TrackAssignment track_states(std::span<const EigenSolution> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("track_states needs at least two points");
  }
  const std::size_t n = points[0].dim();
  std::vector<StateMatching> segments;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    if (points[k + 1].dim() != n) {
      throw std::invalid_argument("track_states: points differ in dimension");
    }
    segments.push_back(match_states(points[k], points[k + 1]));
  }
  return chain(segments, n);
}

EigenSolution solve_at(const SpinSystem& system, double b, double theta, double phi) {
  return eigh_symmetry_adapted(build_hamiltonian(system, FieldVector::along(b, theta, phi)));
}

std::vector<EigenSolution> diagonalize_grid(const SpinSystem& system, const SweepGrid& grid) {
  return diagonalize_points<true>(system, grid);
}

std::vector<EigenSolution> diagonalize_grid_serial(const SpinSystem& system,
                                                   const SweepGrid& grid) {
  return diagonalize_points<false>(system, grid);
}

SweepResult sweep_spectrum(const SpinSystem& system, const SweepGrid& grid,
                           const SweepOptions& options) {
  SweepResult r;
  r.system = system;
  r.grid = grid;
  r.points = options.parallel ? diagonalize_grid(system, grid)
                              : diagonalize_grid_serial(system, grid);
  for (std::size_t k = 0; k < grid.steps; ++k) r.fields.push_back(grid.field(k));

  const std::size_t n = system.s.dim();
  std::vector<StateMatching> segments(grid.steps - 1);
  const auto count = static_cast<long>(segments.size());
#pragma omp parallel for schedule(dynamic, 8) if (options.parallel)
  for (long k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    segments[i] = match_refined(system, grid, r.fields[i], r.points[i], r.fields[i + 1],
                                r.points[i + 1], options.max_refinement_depth);
  }

  TrackAssignment tracks = chain(segments, n);
  for (std::size_t k : tracks.flagged_segments) {
    r.warnings.push_back({k, r.fields[k], r.fields[k + 1], tracks.segment_min_overlap[k]});
  }
  r.state_of_track = std::move(tracks.state_of_track);
  r.segment_min_overlap = std::move(tracks.segment_min_overlap);
  r.track_at_state.resize(r.state_of_track.size());
  for (std::size_t k = 0; k < r.state_of_track.size(); ++k) {
    r.track_at_state[k].resize(n);
    for (std::size_t t = 0; t < n; ++t) r.track_at_state[k][r.state_of_track[k][t]] = t;
  }
  r.track_labels.resize(n, Projection(0));
  r.track_labels = zero_field_labels(r);
  return r;
}

std::string to_string(CrossingKind kind) {
  return kind == CrossingKind::real ? "real" : "avoided";
}

std::optional<GapMinimum> golden_section_minimize(const std::function<double(double)>& f,
                                                  double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  GapMinimum best{c, fc};
  auto keep = [&](double x, double fx) {
    if (fx < best.gap) best = {x, fx};
  };
  keep(d, fd);
  while (b - a > tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      keep(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      keep(d, fd);
    }
    // Nothing left to resolve once the interval stops shrinking.
    if (c == d) break;
  }
  if (!(best.gap < f_lo && best.gap < f_hi)) {
    return std::nullopt;
  }
  return best;
}

GapMinimum refine_gap(const SpinSystem& system, double theta, double phi,
                      std::size_t lower_rank, double b_lo, double b_hi) {
  if (lower_rank + 1 >= system.s.dim()) {
    throw std::invalid_argument("refine_gap: rank pair out of range");
  }
  const auto r = static_cast<Eigen::Index>(lower_rank);
  auto gap = [&](double b) {
    const RealVector e = solve_at(system, b, theta, phi).eigenvalues;
    return e(r + 1) - e(r);
  };
  if (auto found = golden_section_minimize(gap, b_lo, b_hi, kRefineTolerance)) {
    return *found;
  }
  const double width = b_hi - b_lo;
  const bool low_side = gap(b_lo) <= gap(b_hi);
  const double lo = low_side ? b_lo - width : b_lo;
  const double hi = low_side ? b_hi : b_hi + width;
  if (auto found = golden_section_minimize(gap, lo, hi, kRefineTolerance)) {
    return *found;
  }
  throw NumericalError("refine_gap: no interior minimum in [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "] T",
                       std::min(gap(lo), gap(hi)));
}

std::vector<CrossingEvent> find_crossings(const SweepResult& result,
                                          std::optional<TrackPair> pair_filter) {
  const std::size_t points = result.points.size();
  const std::size_t n = result.track_count();
  if (points < 3) return {};

  struct Candidate {
    std::size_t k;
    std::size_t rank;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Candidate> candidates;
  for (std::size_t k = 1; k + 1 < points; ++k) {
    for (std::size_t rank = 0; rank + 1 < n; ++rank) {
      const std::size_t a = result.track_at_state[k][rank];
      const std::size_t b = result.track_at_state[k][rank + 1];
      if (pair_filter) {
        const bool match = (a == pair_filter->first && b == pair_filter->second) ||
                           (a == pair_filter->second && b == pair_filter->first);
        if (!match) continue;
      }
      auto track_gap = [&](std::size_t at) {
        return std::abs(result.track_energy(a, at) - result.track_energy(b, at));
      };
      const double here = track_gap(k);
      if (here < track_gap(k - 1) && here <= track_gap(k + 1)) {
        candidates.push_back({k, rank, std::min(a, b), std::max(a, b)});
      }
    }
  }

  std::vector<std::optional<CrossingEvent>> refined(candidates.size());
  const SweepGrid& grid = result.grid;
  const SpinQuantum s = result.system.s;
  const auto count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < count; ++c) {
    const Candidate& cand = candidates[static_cast<std::size_t>(c)];
    GapMinimum minimum{result.fields[cand.k], result.track_energy(cand.b, cand.k) -
                                                  result.track_energy(cand.a, cand.k)};
    minimum.gap = std::abs(minimum.gap);
    try {
      minimum = refine_gap(result.system, grid.theta, grid.phi, cand.rank,
                           result.fields[cand.k - 1], result.fields[cand.k + 1]);
    } catch (const NumericalError&) {
      // Keep the grid estimate; the discrete minimum had no resolvable interior.
    }
    CrossingEvent ev;
    ev.track_i = cand.a;
    ev.track_j = cand.b;
    ev.b_star = minimum.b_star;
    ev.gap = minimum.gap;
    ev.kind = ev.gap < kRealCrossingTolerance ? CrossingKind::real : CrossingKind::avoided;
    ev.lower_rank = cand.rank;

    const double h = grid.step();
    auto nearest = [&](double b) {
      const double pos = h > 0.0 ? std::round((b - grid.b_min) / h) : 0.0;
      return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(points - 1)));
    };
    const std::size_t before = nearest(ev.b_star - 5.0 * h);
    const std::size_t after = nearest(ev.b_star + 5.0 * h);
    ev.label_i = dominant_projection(result.track_vector(ev.track_i, before), s);
    ev.label_j = dominant_projection(result.track_vector(ev.track_j, before), s);
    const Projection after_i = dominant_projection(result.track_vector(ev.track_i, after), s);
    const Projection after_j = dominant_projection(result.track_vector(ev.track_j, after), s);
    ev.labels_exchanged = after_i == ev.label_j && after_j == ev.label_i;
    refined[static_cast<std::size_t>(c)] = ev;
  }

  std::vector<CrossingEvent> events;
  for (auto& ev : refined) {
    if (ev) events.push_back(*ev);
  }
  std::stable_sort(events.begin(), events.end(), [](const auto& x, const auto& y) {
    return std::tie(x.b_star, x.track_i, x.track_j) < std::tie(y.b_star, y.track_i, y.track_j);
  });
  return events;
}

}  // namespace smm
