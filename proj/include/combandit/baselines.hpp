#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "combandit/environment.hpp"
#include "combandit/random.hpp"
#include "combandit/trace.hpp"

namespace combandit::baselines {

inline constexpr std::uint64_t kMaxEnumeratedActions = 1'000'000;

/// Every K-subset of [0, N) in lexicographic order, with per-action statistics.
class ActionIndexTable {
 public:
  /// Throws TooManyActions when C(N, K) exceeds kMaxEnumeratedActions.
  ActionIndexTable(int num_arms, int subset_size);

  std::size_t size() const { return means_.size(); }
  std::span<const Arm> arms(std::size_t index) const {
    return {arms_.data() + index * static_cast<std::size_t>(subset_size_), static_cast<std::size_t>(subset_size_)};
  }
  Action action(std::size_t index) const;

  double mean(std::size_t index) const { return means_[index]; }
  std::int64_t count(std::size_t index) const { return counts_[index]; }
  void record(std::size_t index, double reward);

  /// Most-played action (ties: lower index).
  std::size_t most_played() const;
  /// Largest empirical mean among played actions, or nullopt if none played.
  std::optional<std::size_t> empirical_best() const;

 private:
  int num_arms_;
  int subset_size_;
  std::vector<Arm> arms_;
  std::vector<double> means_;
  std::vector<std::int64_t> counts_;
};

/// UCB1 over the enumerated actions: one round-robin pass, then
/// argmax mean + sqrt(2 ln t / count). Requires rewards in [0, 1].
RegretTrace run_comb_ucb(const Environment& env, std::int64_t horizon, RandomSource& rng);

struct EpsilonSchedule {
  enum class Kind { Constant, InverseTime };
  Kind kind = Kind::InverseTime;
  double value = 5.0;  // the constant, or c in min(1, c / t)

  static EpsilonSchedule constant(double eps) { return {Kind::Constant, eps}; }
  static EpsilonSchedule inverse_time(double c) { return {Kind::InverseTime, c}; }

  /// Exploration probability at step t (1-based).
  double at(std::int64_t t) const;
};

struct EpsilonGreedyOptions {
  EpsilonSchedule schedule;
  /// Play every action once before the schedule starts.
  bool warm_start = false;
};

RegretTrace run_epsilon_greedy(const Environment& env, std::int64_t horizon, const EpsilonGreedyOptions& options,
                               RandomSource& rng);

/// Plays the optimal action every step.
RegretTrace run_oracle(const Environment& env, std::int64_t horizon);

}  // namespace combandit::baselines
