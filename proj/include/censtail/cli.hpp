#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace censtail {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitData = 3,
    kExitNumerical = 4,
};

/// Runs the `censtail` command line.  `args` excludes the program name.
/// Tables and reports go to `out`; diagnostics and ingest summaries to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace censtail
