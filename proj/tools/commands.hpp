#pragma once

#include <iosfwd>
#include <vector>

namespace skewca::cli {

/// Exit codes of the `ca` tool.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Parses argv and runs one subcommand; everything is printed to out/err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skewca::cli
