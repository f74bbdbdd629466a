#include "combandit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "combandit/error.hpp"

namespace combandit {

std::string_view to_string(JointReward reward) {
  switch (reward) {
    case JointReward::Mean: return "mean";
    case JointReward::Sum: return "sum";
    case JointReward::Quadratic: return "quadratic";
    case JointReward::Max: return "max";
  }
  return "?";
}

std::optional<JointReward> parse_joint_reward(std::string_view name) {
  for (JointReward r : {JointReward::Mean, JointReward::Sum, JointReward::Quadratic, JointReward::Max}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::string_view to_string(EnvironmentKind kind) {
  return kind == EnvironmentKind::IndependentBernoulli ? "bernoulli" : "correlated_gaussian";
}

namespace {

double quadratic_weight(std::size_t k) { return 2.0 / (static_cast<double>(k) * static_cast<double>(k + 1)); }

}  // namespace

double evaluate_joint_reward(JointReward reward, std::span<const double> d) {
  if (d.empty()) throw BanditError(ErrorCode::WrongArity, "joint reward of an empty action");
  double sorted_buf[16];
  std::vector<double> heap;
  std::span<double> sorted;
  if (d.size() <= std::size(sorted_buf)) {
    sorted = std::span<double>(sorted_buf, d.size());
  } else {
    heap.resize(d.size());
    sorted = heap;
  }
  std::copy(d.begin(), d.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.end());

  const double k = static_cast<double>(d.size());
  switch (reward) {
    case JointReward::Mean: return std::accumulate(sorted.begin(), sorted.end(), 0.0) / k;
    case JointReward::Sum: return std::accumulate(sorted.begin(), sorted.end(), 0.0);
    case JointReward::Max: return sorted.back();
    case JointReward::Quadratic: {
      double total = 0.0;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i; j < sorted.size(); ++j) total += sorted[i] * sorted[j];
      }
      return quadratic_weight(d.size()) * total;
    }
  }
  return 0.0;
}

std::vector<Arm> rank_descending(std::span<const double> values) {
  std::vector<Arm> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Arm a, Arm b) { return values[a] > values[b]; });
  return order;
}

Environment Environment::bernoulli(std::vector<double> means, int subset_size, JointReward reward, TiePolicy ties) {
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (!(means[i] >= 0.0 && means[i] <= 1.0)) {
      throw BanditError(ErrorCode::InvalidEnvironment,
                        "Bernoulli mean of arm " + std::to_string(i) + " outside [0, 1]");
    }
  }
  Environment env;
  env.kind_ = EnvironmentKind::IndependentBernoulli;
  env.reward_ = reward;
  env.means_ = std::move(means);
  env.subset_size_ = subset_size;
  env.finish(ties, std::nullopt);
  return env;
}

Environment Environment::correlated_gaussian(int num_arms, double epsilon, double sigma,
                                             std::vector<Arm> optimal_set, JointReward reward) {
  if (reward != JointReward::Sum) {
    throw BanditError(ErrorCode::UnsupportedCombination, "correlated Gaussian arms pair only with the sum reward");
  }
  if (!(epsilon >= 0.0)) throw BanditError(ErrorCode::InvalidEnvironment, "epsilon must be >= 0");
  if (!(sigma > 0.0)) throw BanditError(ErrorCode::InvalidEnvironment, "sigma must be > 0");
  if (num_arms < 1) throw BanditError(ErrorCode::InvalidDims, "need at least one arm");
  Environment env;
  env.kind_ = EnvironmentKind::CorrelatedGaussian;
  env.reward_ = reward;
  env.epsilon_ = epsilon;
  env.sigma_ = sigma;
  env.subset_size_ = static_cast<int>(optimal_set.size());
  env.means_.assign(num_arms, 0.5);
  Action star = make_action(optimal_set, num_arms);
  for (Arm a : star) env.means_[a] += epsilon;
  env.finish(TiePolicy::Allow, std::vector<Arm>(star.begin(), star.end()));
  return env;
}

void Environment::finish(TiePolicy ties, std::optional<std::vector<Arm>> optimal_set) {
  const int n = num_arms();
  if (subset_size_ < 1 || subset_size_ > n) {
    throw BanditError(ErrorCode::InvalidDims,
                      "subset size " + std::to_string(subset_size_) + " with " + std::to_string(n) + " arms");
  }
  if (!optimal_set) {
    std::vector<Arm> order = rank_descending(means_);
    if (ties == TiePolicy::Reject && subset_size_ < n &&
        means_[order[subset_size_ - 1]] == means_[order[subset_size_]]) {
      throw BanditError(ErrorCode::InvalidEnvironment,
                        "tie between the K-th and (K+1)-th largest means; optimal action is not unique");
    }
    order.resize(subset_size_);
    optimal_set = std::move(order);
  }
  best_ = make_action(*optimal_set, n, subset_size_);
  best_reward_ = expected_reward_unchecked(best_.arms());
}

bool Environment::bounded_unit_rewards() const {
  return kind_ == EnvironmentKind::IndependentBernoulli && reward_ != JointReward::Sum;
}

void Environment::validate(const Action& action) const {
  if (static_cast<int>(action.size()) != subset_size_) {
    throw BanditError(ErrorCode::WrongArity, "action " + action.to_string() + " does not have " +
                                                 std::to_string(subset_size_) + " arms");
  }
  if (!action.arms().empty() && action.arms().back() >= num_arms()) {
    throw BanditError(ErrorCode::OutOfRange, "action " + action.to_string() + " exceeds arm count");
  }
}

RewardSample Environment::sample(const Action& action, RandomSource& rng) const {
  validate(action);
  RewardSample out;
  out.arm_rewards.reserve(action.size());
  if (kind_ == EnvironmentKind::IndependentBernoulli) {
    for (Arm a : action) out.arm_rewards.push_back(rng.bernoulli(means_[a]) ? 1.0 : 0.0);
  } else {
    const double shared = sigma_ * rng.normal();
    for (Arm a : action) out.arm_rewards.push_back(means_[a] + shared);
  }
  out.joint_reward = evaluate_joint_reward(reward_, out.arm_rewards);
  return out;
}

double Environment::expected_reward(const Action& action) const {
  validate(action);
  return expected_reward_unchecked(action.arms());
}

double Environment::expected_reward_unchecked(std::span<const Arm> arms) const {
  const double k = static_cast<double>(arms.size());
  if (kind_ == EnvironmentKind::CorrelatedGaussian) {
    if (reward_ != JointReward::Sum) {
      throw BanditError(ErrorCode::UnsupportedCombination, "no closed form for this Gaussian reward");
    }
    double total = 0.0;
    for (Arm a : arms) total += means_[a];
    return total;
  }
  switch (reward_) {
    case JointReward::Mean:
    case JointReward::Sum: {
      double total = 0.0;
      for (Arm a : arms) total += means_[a];
      return reward_ == JointReward::Mean ? total / k : total;
    }
    case JointReward::Max: {
      double none = 1.0;
      for (Arm a : arms) none *= 1.0 - means_[a];
      return 1.0 - none;
    }
    case JointReward::Quadratic: {
      // E[X_i^2] = p_i for Bernoulli; cross terms factor by independence.
      double total = 0.0;
      for (std::size_t i = 0; i < arms.size(); ++i) {
        total += means_[arms[i]];
        for (std::size_t j = i + 1; j < arms.size(); ++j) total += means_[arms[i]] * means_[arms[j]];
      }
      return quadratic_weight(arms.size()) * total;
    }
  }
  throw BanditError(ErrorCode::UnsupportedCombination, "unknown reward");
}

Action best_action(const Environment& env) { return env.best_action(); }

}  // namespace combandit
