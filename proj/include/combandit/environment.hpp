#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "combandit/action.hpp"
#include "combandit/random.hpp"

namespace combandit {

/// Joint reward f applied to the K realized arm rewards of an action.
enum class JointReward {
  Mean,       // (1/K) sum d
  Sum,        // sum d
  Quadratic,  // d^T A d, A upper triangular incl. diagonal, entries 2/(K(K+1))
  Max,        // max d
};

std::string_view to_string(JointReward reward);
std::optional<JointReward> parse_joint_reward(std::string_view name);

/// Evaluates f. The reduction runs over a sorted copy of `d`, so the result is
/// bit-identical for every permutation of the input.
double evaluate_joint_reward(JointReward reward, std::span<const double> d);

enum class EnvironmentKind { IndependentBernoulli, CorrelatedGaussian };

std::string_view to_string(EnvironmentKind kind);

struct RewardSample {
  std::vector<double> arm_rewards;  // hidden from policies
  double joint_reward = 0.0;
};

/// Whether construction rejects a tie between the K-th and (K+1)-th largest mean.
enum class TiePolicy { Reject, Allow };

/// Stochastic arms plus a joint reward function, with exact expected rewards.
/// Immutable after construction; safe to share across threads.
class Environment {
 public:
  /// Independent Bernoulli arms with success probabilities `means`.
  static Environment bernoulli(std::vector<double> means, int subset_size, JointReward reward,
                               TiePolicy ties = TiePolicy::Reject);

  /// Arms 1/2 + epsilon * [i in optimal_set] plus one Normal(0, sigma^2) draw
  /// shared by every arm in a step. Only the Sum reward is supported.
  static Environment correlated_gaussian(int num_arms, double epsilon, double sigma, std::vector<Arm> optimal_set,
                                         JointReward reward = JointReward::Sum);

  EnvironmentKind kind() const { return kind_; }
  JointReward reward() const { return reward_; }
  int num_arms() const { return static_cast<int>(means_.size()); }
  int subset_size() const { return subset_size_; }
  std::span<const double> arm_means() const { return means_; }
  double epsilon() const { return epsilon_; }
  double sigma() const { return sigma_; }

  /// True when every per-step joint reward is guaranteed to lie in [0, 1].
  bool bounded_unit_rewards() const;

  /// Throws unless `action` has exactly K arms below N.
  void validate(const Action& action) const;

  RewardSample sample(const Action& action, RandomSource& rng) const;

  /// Exact mu_a = E[f(d_a)].
  double expected_reward(const Action& action) const;

  const Action& best_action() const { return best_; }
  double best_reward() const { return best_reward_; }

 private:
  Environment() = default;
  void finish(TiePolicy ties, std::optional<std::vector<Arm>> optimal_set);
  double expected_reward_unchecked(std::span<const Arm> arms) const;

  EnvironmentKind kind_ = EnvironmentKind::IndependentBernoulli;
  JointReward reward_ = JointReward::Mean;
  std::vector<double> means_;
  int subset_size_ = 0;
  double epsilon_ = 0.0;
  double sigma_ = 0.0;
  Action best_;
  double best_reward_ = 0.0;
};

/// The K arms with the largest means (ties: smaller index first).
Action best_action(const Environment& env);

/// Indices of `values` sorted by value descending, ties by smaller index.
std::vector<Arm> rank_descending(std::span<const double> values);

}  // namespace combandit
