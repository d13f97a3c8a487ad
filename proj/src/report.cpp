#include "smm/report.hpp"

#include <cstdio>
#include <ostream>
#include <vector>

#include "smm/analysis.hpp"

namespace smm {

std::string format_fixed(double value, int decimals) {
  std::vector<char> buf(64 + static_cast<std::size_t>(decimals));
  const int len = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
  std::string out(buf.data(), static_cast<std::size_t>(len));
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

void write_spectrum_csv(std::ostream& out, const RunConfig& config, const SweepResult& result) {
  out << echo_config(config);
  const std::size_t n = result.system.s.dim();
  out << "b_tesla";
  for (std::size_t i = 0; i < n; ++i) out << ",e_" << i;
  out << '\n';
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    out << format_fixed(result.fields[k], config.decimals);
    const RealVector& e = result.points[k].eigenvalues;
    for (Eigen::Index i = 0; i < e.size(); ++i) out << ',' << format_fixed(e(i), config.decimals);
    out << '\n';
  }
}

void write_composition_csv(std::ostream& out, const RunConfig& config,
                           const SweepResult& result, std::size_t level) {
  out << echo_config(config);
  const SpinQuantum s = result.system.s;
  out << "b_tesla";
  for (std::size_t i = 0; i < s.dim(); ++i) out << ",p_m_" << to_string(projection_at(s, i));
  out << ",sz_expectation\n";
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    const StateComposition c = projection_probabilities(result.points[k].vector(level), s);
    out << format_fixed(result.fields[k], config.decimals);
    for (double p : c.probabilities) out << ',' << format_fixed(p, config.decimals);
    out << ',' << format_fixed(c.sz_expectation, config.decimals) << '\n';
  }
}

void write_crossings_csv(std::ostream& out, const RunConfig& config,
                         const std::vector<CrossingEvent>& events) {
  out << echo_config(config);
  out << "track_i,track_j,b_star_tesla,gap_kelvin,kind,label_i,label_j\n";
  for (const CrossingEvent& ev : events) {
    out << ev.track_i + 1 << ',' << ev.track_j + 1 << ','
        << format_fixed(ev.b_star, config.decimals) << ','
        << format_fixed(ev.gap, config.decimals) << ',' << to_string(ev.kind) << ','
        << to_string(ev.label_i) << ',' << to_string(ev.label_j) << '\n';
  }
}

void write_relaxation_csv(std::ostream& out, const RunConfig& config,
                          const RelaxationParams& params, double tau_seconds) {
  char buf[2][64];
  std::snprintf(buf[0], sizeof buf[0], "%.*e", config.decimals, params.tau0);
  std::snprintf(buf[1], sizeof buf[1], "%.*e", config.decimals, tau_seconds);
  out << "tau0_seconds,u_kelvin,t_kelvin,tau_seconds\n"
      << buf[0] << ',' << format_fixed(params.u, config.decimals) << ','
      << format_fixed(params.t, config.decimals) << ',' << buf[1] << '\n';
}

}  // namespace smm
