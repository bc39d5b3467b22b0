// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it with captured streams.
//
// Exit codes:
//   0  valid / satisfied / countermodel found / engines agree
//   1  not satisfied / search exhausted
//   2  input error (usage, I/O, JSON schema, formula syntax, unknown world)
//   3  invalid frame
//   4  engine disagreement
//   5  search budget exceeded

#ifndef ICTL_TOOLS_CLI_HPP
#define ICTL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ictl::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kInputError = 2,
  kInvalidFrame = 3,
  kDisagreement = 4,
  kBudgetExceeded = 5,
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ictl::cli

#endif  // ICTL_TOOLS_CLI_HPP
