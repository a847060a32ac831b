#pragma once

#include <iosfwd>

namespace tempcore::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNonConvergence = 3,
  kIo = 4,
};

/// Entry point behind the `tempcore` binary; streams are injectable for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tempcore::cli
