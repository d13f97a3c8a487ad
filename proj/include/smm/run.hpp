#pragma once

#include <iosfwd>

#include "smm/config.hpp"

namespace smm {

enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitNumericalError = 2 };

/// Executes one subcommand. Data goes to config.output_path (stdout when empty);
/// diagnostics and warnings go to `diag`. Returns an ExitCode.
int run(const RunConfig& config, OutputKind kind, std::ostream& stdout_sink, std::ostream& diag);

}  // namespace smm
