#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsol {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. SOLENOID_SEED supplies the default seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsol
