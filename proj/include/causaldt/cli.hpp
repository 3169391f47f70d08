#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace causaldt {

/// Exit status of run_cli.
enum ExitCode : int { kExitOk = 0, kExitFails = 1, kExitUsage = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causaldt
