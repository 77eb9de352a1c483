#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cofix/generator.hpp"

namespace cofix {

struct FuzzConfig {
  std::uint64_t seed = 7;   // instance i uses seed + i
  std::size_t count = 100;
  std::size_t n_min = 2;
  std::size_t n_max = 64;
  InstanceRecipe base;      // everything except seed and n
  bool alternate_metric = true;  // even instances Euclidean embedding, odd repaired table
  double step_slack = 1e-12;     // d_{n+1} <= k d_n + step_slack
  double bound_slack = 1e-9;     // d(x_n, z) <= k^n d0 / (1-k) + bound_slack
};

struct FuzzFinding {
  std::uint64_t seed = 0;
  Instance instance;
  std::string detail;
};

struct FuzzSummary {
  std::size_t generated = 0;
  std::size_t verified = 0;
  std::size_t solves = 0;        // one per (verified instance, start point)
  std::size_t agreements = 0;    // solves that returned the oracle's unique common fixed point
  std::size_t steps_checked = 0;
  std::size_t step_ratio_violations = 0;
  std::size_t bound_violations = 0;
  std::vector<FuzzFinding> disagreements;

  bool ok() const noexcept {
    return disagreements.empty() && step_ratio_violations == 0 && bound_violations == 0;
  }
};

/// Universe size used for instance `seed` (uniform in [n_min, n_max]).
std::size_t fuzz_universe_size(std::uint64_t seed, std::size_t n_min, std::size_t n_max);

/// Generates `count` instances and, on every hypotheses-verified one, solves
/// from every start point with the pipeline of the recipe's arity. Each result
/// is compared against the oracle's unique common fixed point, and every
/// (induced) trace is checked against the step-ratio and a-priori bounds.
FuzzSummary run_fuzz(const FuzzConfig& config);

}  // namespace cofix
