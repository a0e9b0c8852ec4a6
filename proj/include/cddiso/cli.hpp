#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cddiso {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 2,
  kExitNumerical = 3,
  kExitVerifyFailed = 4,
};

/// Runs the command line `args` (args[0] is the program name) writing the
/// table or report to `out` (or to --out FILE) and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// RFC-4180 field quoting: quotes fields containing commas, quotes or line
/// breaks and doubles embedded quotes.
std::string csv_field(const std::string& s);

}  // namespace cddiso
