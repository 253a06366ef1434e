#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace manigraph::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kThresholdFailed = 1,
  kInputError = 2,
  kGraphPrecondition = 3,
  kSolverFailure = 4,
};

/// Runs the `manigraph` command line. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace manigraph::cli
