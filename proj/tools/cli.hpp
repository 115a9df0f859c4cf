#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nearint::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kVerificationFailed = 2,
  kInternalError = 3,
};

// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nearint::cli
