#include "combandit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "combandit/error.hpp"

namespace combandit::baselines {

ActionIndexTable::ActionIndexTable(int num_arms, int subset_size) : num_arms_(num_arms), subset_size_(subset_size) {
  if (subset_size < 1 || subset_size > num_arms) throw BanditError(ErrorCode::InvalidDims, "need 1 <= K <= N");
  const std::uint64_t total = binomial(num_arms, subset_size, kMaxEnumeratedActions);
  if (total > kMaxEnumeratedActions) {
    throw BanditError(ErrorCode::TooManyActions, "C(" + std::to_string(num_arms) + ", " +
                                                     std::to_string(subset_size) + ") exceeds the action table limit");
  }
  arms_.reserve(total * subset_size);
  std::vector<Arm> all(num_arms);
  std::iota(all.begin(), all.end(), 0);
  for_each_subset(all, subset_size, [&](std::span<const Arm> s) { arms_.insert(arms_.end(), s.begin(), s.end()); });
  means_.assign(total, 0.0);
  counts_.assign(total, 0);
}

Action ActionIndexTable::action(std::size_t index) const { return make_action(arms(index), num_arms_, subset_size_); }

void ActionIndexTable::record(std::size_t index, double reward) {
  const auto n = static_cast<double>(counts_[index]);
  means_[index] = (n * means_[index] + reward) / (n + 1.0);
  ++counts_[index];
}

std::size_t ActionIndexTable::most_played() const {
  return static_cast<std::size_t>(std::max_element(counts_.begin(), counts_.end()) - counts_.begin());
}

std::optional<std::size_t> ActionIndexTable::empirical_best() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < size(); ++i) {
    if (counts_[i] > 0 && (!best || means_[i] > means_[*best])) best = i;
  }
  return best;
}

namespace {

// Exact expected reward per table entry, computed once.
std::vector<double> table_rewards(const Environment& env, const ActionIndexTable& table) {
  std::vector<double> mu(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) mu[i] = env.expected_reward(table.action(i));
  return mu;
}

}  // namespace

RegretTrace run_comb_ucb(const Environment& env, std::int64_t horizon, RandomSource& rng) {
  if (!env.bounded_unit_rewards()) {
    throw BanditError(ErrorCode::UnsupportedCombination, "UCB1 baseline requires joint rewards in [0, 1]");
  }
  ActionIndexTable table(env.num_arms(), env.subset_size());
  const std::vector<double> mu = table_rewards(env, table);
  RandomSource reward_rng = rng.split("environment");

  RegretTrace trace;
  trace.mu_star = env.best_reward();
  trace.mu.reserve(static_cast<std::size_t>(horizon));
  const std::size_t num_actions = table.size();
  for (std::int64_t t = 0; t < horizon; ++t) {
    std::size_t pick = 0;
    if (static_cast<std::uint64_t>(t) < num_actions) {
      pick = static_cast<std::size_t>(t);
    } else {
      const double log_t = std::log(static_cast<double>(t));
      double best = -1.0;
      for (std::size_t i = 0; i < num_actions; ++i) {
        const double index = table.mean(i) + std::sqrt(2.0 * log_t / static_cast<double>(table.count(i)));
        if (index > best) {
          best = index;
          pick = i;
        }
      }
    }
    const RewardSample sample = env.sample(table.action(pick), reward_rng);
    table.record(pick, sample.joint_reward);
    trace.mu.push_back(mu[pick]);
  }
  if (horizon > 0) trace.final_action = table.action(table.most_played());
  return trace;
}

double EpsilonSchedule::at(std::int64_t t) const {
  if (kind == Kind::Constant) return std::clamp(value, 0.0, 1.0);
  return std::min(1.0, value / static_cast<double>(std::max<std::int64_t>(t, 1)));
}

RegretTrace run_epsilon_greedy(const Environment& env, std::int64_t horizon, const EpsilonGreedyOptions& options,
                               RandomSource& rng) {
  ActionIndexTable table(env.num_arms(), env.subset_size());
  const std::vector<double> mu = table_rewards(env, table);
  RandomSource explore_rng = rng.split("epsilon_greedy");
  RandomSource reward_rng = rng.split("environment");

  RegretTrace trace;
  trace.mu_star = env.best_reward();
  trace.mu.reserve(static_cast<std::size_t>(horizon));
  const std::size_t num_actions = table.size();
  std::optional<std::size_t> greedy;
  for (std::int64_t t = 0; t < horizon; ++t) {
    std::size_t pick = 0;
    if (options.warm_start && static_cast<std::uint64_t>(t) < num_actions) {
      pick = static_cast<std::size_t>(t);
    } else {
      // Both draws are always taken so the stream layout does not depend on
      // the outcome of the coin.
      const bool explore = explore_rng.uniform() < options.schedule.at(t + 1);
      const auto random_pick = static_cast<std::size_t>(explore_rng.below(num_actions));
      pick = (explore || !greedy) ? random_pick : *greedy;
    }
    const RewardSample sample = env.sample(table.action(pick), reward_rng);
    table.record(pick, sample.joint_reward);
    if (!greedy || pick == *greedy) {
      greedy = table.empirical_best();
    } else if (table.mean(pick) > table.mean(*greedy)) {
      greedy = pick;
    }
    trace.mu.push_back(mu[pick]);
  }
  if (greedy) trace.final_action = table.action(*greedy);
  return trace;
}

RegretTrace run_oracle(const Environment& env, std::int64_t horizon) {
  RegretTrace trace;
  trace.mu_star = env.best_reward();
  trace.mu.assign(static_cast<std::size_t>(horizon), env.best_reward());
  trace.final_action = env.best_action();
  return trace;
}

}  // namespace combandit::baselines
