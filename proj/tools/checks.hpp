#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace evfam::checks {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// First few counterexamples, smallest first where sizes are comparable.
  std::vector<std::string> witnesses;

  bool ok() const { return failures == 0; }
};

inline const std::vector<std::string> kSuites = {"intseq", "families", "multisets", "setlimits", "cfp", "analysis"};

/// Runs one property suite. `budget` scales the number of random cases;
/// budget 0 runs nothing. Throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t budget);

}  // namespace evfam::checks
