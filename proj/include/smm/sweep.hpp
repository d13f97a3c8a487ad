#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smm/eigensolver.hpp"
#include "smm/hamiltonian.hpp"

namespace smm {

/// One-parameter field path: B runs from b_min to b_max (Tesla, inclusive) along the
/// fixed direction (theta, phi). Negative B points the field the opposite way.
struct SweepGrid {
  double b_min = 0.0;
  double b_max = 1.0;
  std::size_t steps = 1000;
  double theta = 0.0;
  double phi = 0.0;

  void validate() const;
  double step() const { return (b_max - b_min) / static_cast<double>(steps - 1); }
  double field(std::size_t k) const;
  /// Index of the grid point at B = 0, if there is one.
  std::optional<std::size_t> zero_field_index() const;
};

inline constexpr double kTrackingOverlapThreshold = 0.5;
inline constexpr double kRealCrossingTolerance = 1e-9;  // Kelvin

/// Greedy maximum-overlap matching between two consecutive eigen-solutions.
struct StateMatching {
  std::vector<std::size_t> next;  // next[rank at `from`] = rank at `to`
  std::vector<double> overlap;    // |<from_r|to_next[r]>|
  double min_overlap = 1.0;
};

StateMatching match_states(const EigenSolution& from, const EigenSolution& to);

struct TrackAssignment {
  /// state_of_track[k][t]: energy rank held by track t at point k.
  std::vector<std::vector<std::size_t>> state_of_track;
  /// Smallest matched overlap on each segment k -> k+1.
  std::vector<double> segment_min_overlap;
  /// Segments whose smallest matched overlap is below the tracking threshold.
  std::vector<std::size_t> flagged_segments;
};

/// Chains match_states over consecutive points. Tracks are numbered by energy
/// order at the first point.
TrackAssignment track_states(std::span<const EigenSolution> points);

struct TrackingWarning {
  std::size_t segment;
  double b_lo;
  double b_hi;
  double min_overlap;
};

struct SweepOptions {
  /// Flagged segments are bisected at most this many times.
  int max_refinement_depth = 16;
  bool parallel = true;
};

struct SweepResult {
  SpinSystem system;
  SweepGrid grid;
  std::vector<double> fields;
  std::vector<EigenSolution> points;
  std::vector<std::vector<std::size_t>> state_of_track;
  std::vector<std::vector<std::size_t>> track_at_state;
  std::vector<double> segment_min_overlap;
  /// Dominant zero-field M_S per track.
  std::vector<Projection> track_labels;
  /// Segments that stayed below the overlap threshold after refinement.
  std::vector<TrackingWarning> warnings;

  std::size_t track_count() const { return track_labels.size(); }
  double track_energy(std::size_t track, std::size_t k) const;
  ComplexVector track_vector(std::size_t track, std::size_t k) const;
};

/// Diagonalizes every grid point in parallel (OpenMP).
std::vector<EigenSolution> diagonalize_grid(const SpinSystem& system, const SweepGrid& grid);

/// Serial reference for diagonalize_grid; results are identical.
std::vector<EigenSolution> diagonalize_grid_serial(const SpinSystem& system,
                                                   const SweepGrid& grid);

/// Hamiltonian at signed field b along the grid direction, diagonalized with its
/// symmetry sectors.
EigenSolution solve_at(const SpinSystem& system, double b, double theta, double phi);

/// Spectra along the grid, adiabatic tracks and zero-field labels.
///
/// A point whose diagonalization fails raises SweepError naming that field.
SweepResult sweep_spectrum(const SpinSystem& system, const SweepGrid& grid,
                           const SweepOptions& options = {});

enum class CrossingKind { real, avoided };
std::string to_string(CrossingKind kind);

struct CrossingEvent {
  std::size_t track_i = 0;  // track_i < track_j
  std::size_t track_j = 0;
  double b_star = 0.0;  // Tesla
  double gap = 0.0;     // Kelvin
  CrossingKind kind = CrossingKind::real;
  /// Dominant M_S of track_i and track_j five grid steps below b_star.
  Projection label_i{0};
  Projection label_j{0};
  /// True when the two tracks' dominant M_S are swapped five steps above b_star.
  bool labels_exchanged = false;
  /// Lower of the two adjacent energy ranks at the grid minimum.
  std::size_t lower_rank = 0;
};

struct TrackPair {
  std::size_t first;
  std::size_t second;
};

/// Local minima of the gap between energy-adjacent tracks, refined and classified.
std::vector<CrossingEvent> find_crossings(const SweepResult& result,
                                          std::optional<TrackPair> pair_filter = {});

struct GapMinimum {
  double b_star;
  double gap;
};

/// Golden-section search for a minimum strictly inside [lo, hi].
///
/// Returns std::nullopt when the best value does not undercut both endpoints, i.e.
/// the bracket holds no interior minimum.
std::optional<GapMinimum> golden_section_minimize(const std::function<double(double)>& f,
                                                  double lo, double hi, double tolerance);

/// Interval width at which refine_gap stops. Far below the 1e-6 T required so that
/// exact crossings resolve to gaps well under kRealCrossingTolerance.
inline constexpr double kRefineTolerance = 1e-12;

/// Minimizes e_{r+1}(B) - e_r(B) over [b_lo, b_hi], where r = lower_rank.
///
/// If the minimum sits on an end of the bracket, the bracket is widened once by its
/// own width on that side; a second failure throws NumericalError.
GapMinimum refine_gap(const SpinSystem& system, double theta, double phi,
                      std::size_t lower_rank, double b_lo, double b_hi);

}  // namespace smm
