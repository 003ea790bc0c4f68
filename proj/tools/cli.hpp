#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fockmult::cli {

enum ExitCode : int {
  kPass = 0,
  kUsage = 1,  // bad arguments, parse or capacity errors
  kNotConverged = 2,
  kFailed = 3,  // a verification found a counterexample
};

/// Runs the fockmult command line with `args` (without the program name).
/// Reports go to `out` (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fockmult::cli
