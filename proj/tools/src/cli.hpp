#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gfrac::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNoConvergence = 3,
  kIoError = 4,
};

/// Runs the gfrac command line; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gfrac::cli
