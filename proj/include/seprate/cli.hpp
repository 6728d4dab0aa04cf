#pragma once

// `seprate` command line: test, sweep, lowerbound, check.
//
// Exit codes: 0 success (test: accept), 3 test rejects, 2 a check suite
// reported a failing invariant, 1 usage or runtime error.

#include <iosfwd>
#include <string>
#include <vector>

namespace seprate {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitReject = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seprate
