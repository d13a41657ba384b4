#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lattice_heat::cli {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `lattice-heat` command. args[0] is the program name.
/// Output files are written only after the whole computation succeeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lattice_heat::cli
