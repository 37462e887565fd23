#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latticeforge::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,   // certified / holds
  kNegative = 1,  // a mathematically negative result
  kInputError = 2,
  kResourceCap = 3,
  kInternalError = 4,  // a library invariant failed; always a bug
};

/// Runs the tool on `args` (without the program name). The JSON report goes
/// to `out`, the human-readable summary and diagnostics to `err`.
/// LATTICEFORGE_THREADS, when set, caps worker threads.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latticeforge::cli
