#pragma once

// Property suites run by `seprate check`: each invariant becomes one row of
// a pass/fail table.

#include <cstdint>
#include <string>
#include <vector>

namespace seprate {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
  /// Planted fixture: `pass` means the expected violation was reported.
  bool expected_failure = false;
};

/// "concentration", "geometry", "divergence" or "rounding"; throws DomainError otherwise.
std::vector<CheckResult> run_check_suite(const std::string& suite, std::uint64_t seed);

const std::vector<std::string>& check_suite_names();

}  // namespace seprate
