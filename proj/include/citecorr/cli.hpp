#pragma once

#include <iosfwd>

namespace citecorr {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1, ///< input or I/O failure
    exit_usage = 2,   ///< bad flags or a rejected query
    exit_harvest_interrupted = 3,
};

/// Runs one command line. Documents go to `out`, diagnostics to `err`.
/// The data directory is --data, else $CITECORR_DATA, else ./data.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace citecorr
