#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace caselaw::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kParseError = 2,
  kValidationError = 3,
  kInconsistentDatabase = 4,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace caselaw::cli
