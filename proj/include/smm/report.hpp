#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smm/config.hpp"
#include "smm/sweep.hpp"

namespace smm {

/// Fixed-point with `decimals` digits, '.' separator; negative zero prints unsigned.
std::string format_fixed(double value, int decimals);

/// Config echo, then `b_tesla,e_0,...,e_2S`, then one row per grid point.
void write_spectrum_csv(std::ostream& out, const RunConfig& config, const SweepResult& result);

/// Composition of the level with energy rank `level` at every grid point:
/// `b_tesla,p_m_-S,...,p_m_S,sz_expectation`.
void write_composition_csv(std::ostream& out, const RunConfig& config,
                           const SweepResult& result, std::size_t level);

/// `track_i,track_j,b_star_tesla,gap_kelvin,kind,label_i,label_j`; tracks numbered from 1.
void write_crossings_csv(std::ostream& out, const RunConfig& config,
                         const std::vector<CrossingEvent>& events);

void write_relaxation_csv(std::ostream& out, const RunConfig& config,
                          const RelaxationParams& params, double tau_seconds);

}  // namespace smm
