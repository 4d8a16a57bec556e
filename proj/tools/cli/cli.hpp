#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace driftlab::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDrift = 1;  // `detect` only
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Entry point for `driftlab <fit|detect|experiment|convert> ...`; `args`
/// excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace driftlab::cli
