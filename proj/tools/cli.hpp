#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ltlpct::cli {

/// Exit codes.
inline constexpr int kPositive = 0;      // sat, holds
inline constexpr int kNegative = 1;      // unsat, fails
inline constexpr int kInconclusive = 2;  // inconclusive
inline constexpr int kUsage = 3;         // bad command line
inline constexpr int kInput = 4;         // unreadable or malformed input

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltlpct::cli
