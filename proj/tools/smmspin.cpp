// Command-line front end: spectrum | crossings | state | relaxation.

#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "smm/analysis.hpp"
#include "smm/config.hpp"
#include "smm/run.hpp"

namespace {

struct Overrides {
  std::string config_path;
  // deque: add_option keeps pointers into the elements.
  std::deque<std::pair<std::string, std::optional<std::string>>> keyed;
  std::optional<std::string> plot;
  std::optional<std::string> pair;
  std::optional<std::string> tau0, u, t;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value configuration file");
  // Flag name -> config key; values are applied with the same validation as the file.
  static const std::pair<const char*, const char*> flags[] = {
      {"--spin", "spin"},
      {"--d-kelvin", "d_kelvin"},
      {"--e-kelvin", "e_kelvin"},
      {"--g", "g"},
      {"--mu-b", "mu_b_kelvin_per_tesla"},
      {"--b-min", "b_min_tesla"},
      {"--b-max", "b_max_tesla"},
      {"--steps", "steps"},
      {"--theta-deg", "theta_deg"},
      {"--phi-deg", "phi_deg"},
      {"--out", "output"},
      {"--decimals", "decimals"},
  };
  for (const auto& [flag, key] : flags) {
    o.keyed.emplace_back(key, std::nullopt);
    cmd->add_option(flag, o.keyed.back().second, std::string("overrides ") + key);
  }
  cmd->add_option("--plot", o.plot, "SVG plot path (default: --out with .svg extension)");
}

smm::RunConfig build_config(const Overrides& o) {
  smm::RunConfig config;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path, std::ios::binary);
    if (!in) throw smm::ConfigError("--config", 0, "cannot read '" + o.config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    config = smm::parse_config(text.str());
  }
  for (const auto& [key, value] : o.keyed) {
    if (value) smm::set_config_value(config, key, *value, 0);
  }
  if (o.plot) config.plot_path = *o.plot;
  config.warnings.clear();
  if (config.system.rhombicity_warning()) {
    config.warnings.push_back("|E| > |D|/3: rhombic term exceeds the conventional range");
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Giant-spin exact diagonalization: spectra, crossings, compositions"};
  app.require_subcommand(1);

  Overrides o;
  std::optional<std::string> state_index;
  auto* spectrum = app.add_subcommand("spectrum", "energy levels along a field sweep (CSV)");
  auto* crossings = app.add_subcommand("crossings", "real and avoided level crossings (CSV)");
  auto* state = app.add_subcommand("state", "projection probabilities of one level (CSV)");
  auto* relaxation = app.add_subcommand("relaxation", "Arrhenius relaxation time");
  for (auto* cmd : {spectrum, crossings, state, relaxation}) add_common(cmd, o);
  crossings->add_option("--pair", o.pair, "track numbers I,J (1 = ground state at b_min)");
  state->add_option("--state-index", state_index, "energy rank of the level, 0 = lowest");
  relaxation->add_option("--tau0", o.tau0, "attempt time tau0 in seconds")->required();
  relaxation->add_option("--u", o.u, "barrier in Kelvin (default |D| S^2)");
  relaxation->add_option("--t", o.t, "temperature in Kelvin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? smm::kExitOk : smm::kExitConfigError;
  }

  smm::OutputKind kind = smm::OutputKind::spectrum;
  smm::RunConfig config;
  try {
    config = build_config(o);
    if (*crossings) {
      kind = smm::OutputKind::crossings;
      if (o.pair) {
        const auto comma = o.pair->find(',');
        const auto first = smm::parse_number(o.pair->substr(0, comma));
        const auto second = comma == std::string::npos
                                ? std::nullopt
                                : smm::parse_number(o.pair->substr(comma + 1));
        if (!first || !second || *first < 1 || *second < 1 || *first != static_cast<long>(*first) ||
            *second != static_cast<long>(*second)) {
          throw smm::ConfigError("--pair", 0, "expected two track numbers 'I,J'");
        }
        config.pair = smm::TrackPair{static_cast<std::size_t>(*first),
                                     static_cast<std::size_t>(*second)};
      }
    } else if (*state) {
      kind = smm::OutputKind::state_composition;
      if (state_index) smm::set_config_value(config, "state_index", *state_index, 0);
    } else if (*relaxation) {
      kind = smm::OutputKind::relaxation;
      smm::RelaxationParams p;
      auto number = [](const char* flag, const std::string& text) {
        const auto v = smm::parse_number(text);
        if (!v) throw smm::ConfigError(flag, 0, "malformed number '" + text + "'");
        return *v;
      };
      p.tau0 = number("--tau0", *o.tau0);
      p.t = number("--t", *o.t);
      p.u = o.u ? number("--u", *o.u) : smm::barrier_height(config.system);
      config.relaxation = p;
    }
    config.outputs.insert(kind);
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return smm::kExitConfigError;
  }
  return smm::run(config, kind, std::cout, std::cerr);
}
