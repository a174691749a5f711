#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace esc::cli {

// Exit codes are part of the command-line contract.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kNoSolution = 3,
};

/// Runs one command line (args excludes the program name). Normal output goes
/// to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace esc::cli
