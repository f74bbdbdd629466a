#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "combandit/environment.hpp"

namespace combandit {

/// Largest arm count for which the enumeration checks below are permitted.
inline constexpr int kMaxEnumerationArms = 12;

/// Average of mu_a over every action that contains `arm`.
double average_reward_containing(const Environment& env, Arm arm);

/// Exact check that averaging action rewards over the actions containing an
/// arm preserves the order of individual arm means. Differences within
/// `tolerance` count as zero. Throws TooLarge above kMaxEnumerationArms.
bool verify_ordering_property(const Environment& env, Arm i, Arm j, double tolerance = 1e-12);

struct MonotonicityViolation {
  std::vector<Arm> shared;  // the K-1 common arms
  Arm better = 0;
  Arm worse = 0;
  double reward_better = 0.0;
  double reward_worse = 0.0;
};

/// Swapping a worse arm for a better one never lowers the expected reward:
/// checks every (K-1)-subset S and every pair i, j outside S with p_i > p_j.
/// Returns the violations found (empty when the property holds).
std::vector<MonotonicityViolation> find_monotonicity_violations(const Environment& env, double tolerance = 1e-12);

}  // namespace combandit

namespace combandit {

struct SuiteLine {
  JointReward reward = JointReward::Mean;
  int environments = 0;
  int ordering_checks = 0;
  int ordering_failures = 0;
  int monotonicity_failures = 0;
  bool passed() const { return ordering_failures == 0 && monotonicity_failures == 0; }
};

struct SuiteReport {
  std::vector<SuiteLine> lines;  // one per joint reward
  bool passed() const;
};

/// Ordering and monotonicity checks over random Bernoulli environments with
/// N in [K+1, max_arms], K in [1, max_subset], `vectors` mean draws per (N, K),
/// for all four joint rewards.
SuiteReport run_assumption_suite(std::uint64_t seed, int vectors = 20, int max_arms = 8, int max_subset = 3);

}  // namespace combandit
