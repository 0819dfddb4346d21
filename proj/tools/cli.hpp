#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arithdyn::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kResourceCap = 2, kInvariant = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arithdyn::cli
