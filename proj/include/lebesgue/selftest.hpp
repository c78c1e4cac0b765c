#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lebesgue {

struct SelftestOptions {
  std::size_t cases = 200;
  std::uint64_t seed = 1;
  std::size_t depth = 3;  // maximum expression depth
  std::size_t size = 4;   // maximum side of a factor carrier
  // "zero-times-inf" flips the 0 * inf convention for the whole run.
  std::optional<std::string> mutant;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::string> counterexample;
};

/// Randomized property suites: tonelli, box, change_of_measure, beppo_levi,
/// mp_correct, sf_aux_cons, adapted_seq. Reproducible for a fixed seed.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options);

}  // namespace lebesgue
