#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpt {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitNumerical = 3 };

/// Entry point of the fpt-order tool. args excludes the program name.
/// Curves go to `out` (or to files under --output-dir), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpt
