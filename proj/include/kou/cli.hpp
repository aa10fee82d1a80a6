#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kou::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kNumerical = 3, kDiverged = 4 };

/// Runs one koufpt invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kou::cli
