#include "smm/run.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>

#include "smm/analysis.hpp"
#include "smm/errors.hpp"
#include "smm/report.hpp"
#include "smm/svg_plot.hpp"

namespace smm {

namespace {

std::string plot_path_for(const RunConfig& config) {
  if (!config.plot_path.empty()) return config.plot_path;
  if (config.output_path.empty()) return {};
  return std::filesystem::path(config.output_path).replace_extension(".svg").string();
}

template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void emit_plot(const RunConfig& config, const LinePlot& plot) {
  const std::string path = plot_path_for(config);
  if (path.empty()) return;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_svg(file, plot);
}

void report_tracking(const SweepResult& result, std::ostream& diag) {
  for (const auto& w : result.warnings) {
    diag << "warning: tracking overlap " << w.min_overlap << " below threshold on ["
         << w.b_lo << ", " << w.b_hi << "] T after refinement\n";
  }
}

}  // namespace

int run(const RunConfig& config, OutputKind kind, std::ostream& stdout_sink, std::ostream& diag) {
  try {
    config.validate();
    for (const auto& w : config.warnings) diag << "warning: " << w << '\n';

    if (kind == OutputKind::relaxation) {
      if (!config.relaxation) {
        throw ConfigError("relaxation", 0, "relaxation parameters missing");
      }
      const double tau = relaxation_time(*config.relaxation);
      emit(config.output_path, stdout_sink,
           [&](std::ostream& out) { write_relaxation_csv(out, config, *config.relaxation, tau); });
      return kExitOk;
    }

    if (kind == OutputKind::state_composition && !config.state_index) {
      throw ConfigError("state_index", 0, "the state subcommand needs a state index");
    }

    const SweepResult result = sweep_spectrum(config.system, config.grid());
    report_tracking(result, diag);

    switch (kind) {
      case OutputKind::spectrum:
        emit(config.output_path, stdout_sink,
             [&](std::ostream& out) { write_spectrum_csv(out, config, result); });
        emit_plot(config, spectrum_plot(result));
        break;
      case OutputKind::crossings: {
        std::optional<TrackPair> filter;
        if (config.pair) filter = TrackPair{config.pair->first - 1, config.pair->second - 1};
        const auto events = find_crossings(result, filter);
        emit(config.output_path, stdout_sink,
             [&](std::ostream& out) { write_crossings_csv(out, config, events); });
        break;
      }
      case OutputKind::state_composition:
        emit(config.output_path, stdout_sink, [&](std::ostream& out) {
          write_composition_csv(out, config, result, *config.state_index);
        });
        emit_plot(config, composition_plot(result, *config.state_index));
        break;
      case OutputKind::relaxation:
        break;
    }
    return kExitOk;
  } catch (const SweepError& e) {
    diag << "error: numerical failure at B = " << e.field_tesla() << " T: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const NumericalError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace smm
