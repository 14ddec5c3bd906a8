#pragma once

#include <iosfwd>

namespace centralspin::cli {

/// Process exit codes. Stable: scripts depend on them.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitUsage = 2,  // bad arguments, unreadable or invalid config, unknown experiment
    kExitOutput = 3,  // output directory or file not writable
    kExitQuadrature = 4,
};

/// Entry point for the `centralspin` tool. Subcommands: decoherence, gp, sweep, validate.
/// Machine-readable results go to `out`, diagnostics and timings to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace centralspin::cli
