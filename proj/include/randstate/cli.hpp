#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rstate::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kPass = 0,
  kUsageError = 1,
  kStatisticalFailure = 2,
};

inline constexpr int kSchemaVersion = 1;

/// Runs the command line `args` (args[0] is the program name). Records go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rounds to 12 significant digits, the precision of every number the CLI prints.
double round12(double x);

}  // namespace rstate::cli
