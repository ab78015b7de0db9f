#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tablecount::cli {

enum ExitCode : int { Ok = 0, Usage = 1, GuardExceeded = 2, InvariantFailure = 3 };

/// Runs one command line (without the program name). Payload goes to `out`,
/// diagnostics and help text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tablecount::cli
