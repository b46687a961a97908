#pragma once

#include <ostream>

namespace bowfire {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitNoData = 1, kExitUsage = 2 };

/// Entry point of the `bowfire` tool: train | detect | eval | sweep.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bowfire
