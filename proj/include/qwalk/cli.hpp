#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwalk::cli {

/// Exit codes: 0 success/pass, 1 check failed or guard violated, 2 malformed input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Runs the command line `args` (args[0] is the program name). JSON results go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
