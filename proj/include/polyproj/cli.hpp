#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyproj {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs one CLI invocation (arguments without the program name). Reports go to
/// `out` unless --output is given; diagnostics and summaries go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyproj
