#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsrel {

/// Process exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitInput = 2,   // I/O or parse failure
  kExitSolver = 3,
  kExitUsage = 4,   // bad flags or domain errors
};

/// Runs the command line `args` (args[0] is the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsrel
