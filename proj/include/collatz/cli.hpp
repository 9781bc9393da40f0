#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collatz {

enum class OutputFormat { Text, Json, Csv };

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs the collatz_lab command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collatz
