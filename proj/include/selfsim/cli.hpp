#ifndef SELFSIM_CLI_HPP
#define SELFSIM_CLI_HPP

#include <iosfwd>

namespace selfsim {

// Exit codes of every subcommand.
enum ExitCode : int {
  kExitOk = 0,            // property holds / computation done
  kExitFails = 1,         // property fails
  kExitInconclusive = 2,  // a bound was hit
  kExitInputError = 3,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace selfsim

#endif  // SELFSIM_CLI_HPP
