#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spa::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kViolation = 2,
  kTimeout = 3,
};

/// Runs the command line `args` (without the program name). Regular output
/// goes to `out`, diagnostics to `err`. Options not given on the command line
/// fall back to SPA_* environment variables.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spa::cli
