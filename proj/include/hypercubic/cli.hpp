#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypercubic::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

// Runs `hypercubic <args...>`; args excludes the program name. Normal output
// goes to out (or to --out), diagnostics and timings to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypercubic::cli
