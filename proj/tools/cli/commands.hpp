#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entcost::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitGuard = 4;

/// Runs one command line (without the program name). Results go to `out`,
/// or to the --out file; diagnostics go to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entcost::cli
