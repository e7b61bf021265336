#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffdyn {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInconsistent = 2,
  kExitSchema = 3,
  kExitTooLarge = 4,
};

/// Runs one command. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffdyn
