#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cobcalc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;          // what was exercised
  std::string counterexample;  // first failing term map, canonical text form
};

/// Names of every invariant check, in report order.
std::vector<std::string> selftest_check_names();

/// Runs every invariant check. Each check draws from its own generator
/// seeded by (seed, check name), so the report is identical for any
/// number of worker threads.
std::vector<CheckResult> run_selftest(std::uint64_t seed, unsigned threads = 1);

}  // namespace cobcalc
