#pragma once

#include <iosfwd>

namespace fcs::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 2,
  kExitNumerical = 3,
  kExitNormalization = 4,
  kExitValidation = 5,
};

/// Parses argv, runs one subcommand and writes its table. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fcs::cli
