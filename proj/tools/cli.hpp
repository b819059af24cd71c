#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace compreg::cli {

/// Process exit statuses.
enum ExitCode : int {
  kSuccess = 0,
  kReproductionFailure = 1,
  kInputError = 2,
  kNumericalFailure = 3,
  kUsageError = 4,
};

/// Runs the command line `args` (without the program name), writing reports
/// to `out` and diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compreg::cli
