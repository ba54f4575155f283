#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ivtest::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kPass = 0,   // pass / feasible / equal
  kFail = 1,   // fail / infeasible / counterexample
  kError = 2,  // usage, parse, shape or capacity error
};

/// Runs one command line (without the program name). "-" as an input path reads `in`.
/// Output is a pure function of the arguments and inputs.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace ivtest::cli
