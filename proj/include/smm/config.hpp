#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smm/analysis.hpp"
#include "smm/hamiltonian.hpp"
#include "smm/sweep.hpp"

namespace smm {

enum class OutputKind { spectrum, crossings, state_composition, relaxation };

/// Parse failure that names the offending key and line (line 0: command line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, std::size_t line, const std::string& message);

  const std::string& key() const { return key_; }
  std::size_t line() const { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

struct RunConfig {
  SpinSystem system;
  double b_min_tesla = 0.0;
  double b_max_tesla = 1.0;
  std::size_t steps = 1000;
  double theta_deg = 0.0;
  double phi_deg = 0.0;

  std::set<OutputKind> outputs;
  std::optional<std::size_t> state_index;
  /// Tracks numbered from 1 (ground state at the start of the sweep).
  std::optional<TrackPair> pair;
  std::optional<RelaxationParams> relaxation;

  int decimals = 10;
  std::string output_path;  // empty: standard output
  std::string plot_path;    // empty: no plot

  /// Non-fatal notes collected while parsing (e.g. |E| > |D|/3).
  std::vector<std::string> warnings;

  SweepGrid grid() const;
  /// Cross-field checks (state_index against 2S, b_min <= b_max).
  void validate() const;
};

/// Flat `key = value` lines; blank lines, `#`/`;` comments and `[section]` headers
/// are allowed. Omitted keys keep their defaults.
RunConfig parse_config(std::string_view text);

/// Applies one key; used for both file lines and command-line overrides.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value,
                      std::size_t line);

/// Every numeric setting as `# key = value` lines that parse back to identical values.
std::string echo_config(const RunConfig& config);

/// Strict decimal parse of a whole string; std::nullopt on trailing junk.
std::optional<double> parse_number(std::string_view text);

}  // namespace smm
