#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crier {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command line tool on `args` (without the program name).
/// Failures print a single-line JSON object to `err` and return a non-zero
/// exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace crier
