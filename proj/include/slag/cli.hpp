#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slag::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNoConvergence = 2,
  kSingularParameters = 3,
  kVerificationFailed = 4,
};

/// Entry point shared by the executable and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slag::cli
