#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regenalloc::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInfeasible = 2,
  kVerificationFailed = 3,
};

/// Runs the command line `args` (args[0] is the program name). Normal
/// output goes to `out` unless --output redirects it; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regenalloc::cli
