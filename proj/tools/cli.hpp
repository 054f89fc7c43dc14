#pragma once

#include <iosfwd>

namespace mpfbm::cli {

enum ExitCode : int {
  kOk = 0,
  kImplicationViolated = 1,
  kInputError = 2,
  kDomainError = 3,
  kNumericalError = 4,
};

/// Entry point of the `mpfbm` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpfbm::cli
