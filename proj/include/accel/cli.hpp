#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace accel {

/// Exit codes of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the accel_sim tool. args excludes the program name.
/// Results go to out (or --out files); diagnostics go to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accel
