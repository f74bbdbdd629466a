#include "combandit/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "combandit/error.hpp"

namespace combandit {

namespace {

void guard_enumeration(const Environment& env) {
  if (env.num_arms() > kMaxEnumerationArms) {
    throw BanditError(ErrorCode::TooLarge, "enumeration limited to " + std::to_string(kMaxEnumerationArms) +
                                               " arms, environment has " + std::to_string(env.num_arms()));
  }
}

int sign(double x, double tolerance) { return x > tolerance ? 1 : (x < -tolerance ? -1 : 0); }

}  // namespace

double average_reward_containing(const Environment& env, Arm arm) {
  guard_enumeration(env);
  const int n = env.num_arms();
  const int k = env.subset_size();
  std::vector<Arm> others;
  for (Arm a = 0; a < n; ++a) {
    if (a != arm) others.push_back(a);
  }
  double total = 0.0;
  std::size_t count = 0;
  std::vector<Arm> members;
  for_each_subset(others, k - 1, [&](std::span<const Arm> rest) {
    members.assign(rest.begin(), rest.end());
    members.push_back(arm);
    total += env.expected_reward(make_action(members, n));
    ++count;
  });
  return total / static_cast<double>(count);
}

bool verify_ordering_property(const Environment& env, Arm i, Arm j, double tolerance) {
  guard_enumeration(env);
  const auto means = env.arm_means();
  const double arm_gap = means[i] - means[j];
  const double action_gap = average_reward_containing(env, i) - average_reward_containing(env, j);
  return sign(arm_gap, 0.0) == sign(action_gap, tolerance);
}

std::vector<MonotonicityViolation> find_monotonicity_violations(const Environment& env, double tolerance) {
  guard_enumeration(env);
  const int n = env.num_arms();
  const int k = env.subset_size();
  const auto means = env.arm_means();
  std::vector<Arm> all(n);
  std::iota(all.begin(), all.end(), 0);

  std::vector<MonotonicityViolation> violations;
  std::vector<Arm> members;
  auto reward_with = [&](std::span<const Arm> shared, Arm extra) {
    members.assign(shared.begin(), shared.end());
    members.push_back(extra);
    return env.expected_reward(make_action(members, n));
  };
  for_each_subset(all, k - 1, [&](std::span<const Arm> shared) {
    auto in_shared = [&](Arm a) { return std::find(shared.begin(), shared.end(), a) != shared.end(); };
    for (Arm i = 0; i < n; ++i) {
      if (in_shared(i)) continue;
      for (Arm j = 0; j < n; ++j) {
        if (j == i || in_shared(j) || !(means[i] > means[j])) continue;
        const double ri = reward_with(shared, i);
        const double rj = reward_with(shared, j);
        if (ri < rj - tolerance) {
          violations.push_back({std::vector<Arm>(shared.begin(), shared.end()), i, j, ri, rj});
        }
      }
    }
  });
  return violations;
}

}  // namespace combandit

namespace combandit {

bool SuiteReport::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const SuiteLine& l) { return l.passed(); });
}

SuiteReport run_assumption_suite(std::uint64_t seed, int vectors, int max_arms, int max_subset) {
  SuiteReport report;
  RandomSource root(seed);
  for (JointReward reward : {JointReward::Mean, JointReward::Sum, JointReward::Quadratic, JointReward::Max}) {
    SuiteLine line;
    line.reward = reward;
    RandomSource rng = root.split(to_string(reward));
    for (int k = 1; k <= max_subset; ++k) {
      for (int n = k + 1; n <= max_arms; ++n) {
        for (int v = 0; v < vectors; ++v) {
          std::vector<double> means(n);
          for (double& m : means) m = rng.uniform();
          const Environment env = Environment::bernoulli(means, k, reward, TiePolicy::Allow);
          ++line.environments;
          for (Arm i = 0; i < n; ++i) {
            for (Arm j = i + 1; j < n; ++j) {
              ++line.ordering_checks;
              if (!verify_ordering_property(env, i, j)) ++line.ordering_failures;
            }
          }
          line.monotonicity_failures += static_cast<int>(find_monotonicity_violations(env).size());
        }
      }
    }
    report.lines.push_back(line);
  }
  return report;
}

}  // namespace combandit
