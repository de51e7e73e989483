#pragma once

#include <iosfwd>

namespace quadext {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitFailed = 2,
  kExitDegenerateZ = 3,
};

/// Entry point of the `quadext` tool: norm, extend, verify, gen, selftest.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quadext
