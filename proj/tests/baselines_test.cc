#include "combandit/baselines.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "combandit/error.hpp"
#include "test_oracles.hpp"

namespace combandit::baselines {
namespace {

TEST(ActionIndexTableTest, LexicographicEnumeration) {
  const ActionIndexTable table(5, 3);
  ASSERT_EQ(table.size(), 10u);
  EXPECT_EQ(table.action(0), make_action({0, 1, 2}, 5));
  EXPECT_EQ(table.action(1), make_action({0, 1, 3}, 5));
  EXPECT_EQ(table.action(9), make_action({2, 3, 4}, 5));
  for (std::size_t i = 1; i < table.size(); ++i) EXPECT_LT(table.action(i - 1), table.action(i));
}

TEST(ActionIndexTableTest, StatisticsAndTies) {
  ActionIndexTable table(4, 2);
  EXPECT_FALSE(table.empirical_best().has_value());
  table.record(2, 1.0);
  table.record(2, 0.0);
  table.record(4, 0.8);
  EXPECT_DOUBLE_EQ(table.mean(2), 0.5);
  EXPECT_EQ(table.count(2), 2);
  EXPECT_EQ(table.most_played(), 2u);
  EXPECT_EQ(*table.empirical_best(), 4u);
  table.record(4, 0.8);
  EXPECT_EQ(table.most_played(), 2u);  // tie: lower index
}

TEST(ActionIndexTableTest, RefusesHugeTables) {
  try {
    ActionIndexTable table(45, 8);
    FAIL() << "expected TooManyActions";
  } catch (const BanditError& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyActions);
  }
}

TEST(CombUcbTest, RoundRobinFirst) {
  const Environment env = Environment::bernoulli({0.9, 0.8, 0.4, 0.3, 0.1}, 2, JointReward::Mean);
  RandomSource rng(1);
  const RegretTrace trace = run_comb_ucb(env, 10, rng);
  ASSERT_EQ(trace.steps(), 10);
  // One play of each action in lexicographic order.
  const ActionIndexTable table(5, 2);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(trace.mu[i], env.expected_reward(table.action(i)));
}

TEST(CombUcbTest, LearnsAndTruncates) {
  const Environment env = Environment::bernoulli({0.9, 0.8, 0.4, 0.3, 0.1}, 2, JointReward::Mean);
  RandomSource rng(2);
  const RegretTrace trace = run_comb_ucb(env, 20'000, rng);
  ASSERT_EQ(trace.steps(), 20'000);
  EXPECT_EQ(trace.final_action, env.best_action());
  const auto points = cumulative_regret(trace, {10'000, 20'000});
  // Logarithmic growth: the second half adds far less than the first.
  EXPECT_LT(points[1].cumulative_regret - points[0].cumulative_regret, 0.5 * points[0].cumulative_regret);

  RandomSource short_rng(2);
  EXPECT_EQ(run_comb_ucb(env, 3, short_rng).steps(), 3);
}

TEST(CombUcbTest, RequiresBoundedRewards) {
  const Environment env = Environment::correlated_gaussian(6, 0.1, 1.0, {0, 1});
  RandomSource rng(3);
  try {
    run_comb_ucb(env, 100, rng);
    FAIL() << "expected UnsupportedCombination";
  } catch (const BanditError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedCombination);
  }
}

TEST(EpsilonGreedyTest, ScheduleValues) {
  EXPECT_DOUBLE_EQ(EpsilonSchedule::inverse_time(5).at(1), 1.0);
  EXPECT_DOUBLE_EQ(EpsilonSchedule::inverse_time(5).at(10), 0.5);
  EXPECT_DOUBLE_EQ(EpsilonSchedule::constant(0.2).at(1000), 0.2);
}

TEST(EpsilonGreedyTest, AlwaysExploringMatchesUniformAverage) {
  const std::vector<double> means{0.9, 0.2, 0.6, 0.4, 0.7};
  const Environment env = Environment::bernoulli(means, 2, JointReward::Quadratic);
  double average = 0.0;
  const auto subsets = testing::all_subsets(5, 2);
  for (const auto& s : subsets) {
    average += testing::enumerate_bernoulli(JointReward::Quadratic, {means[s[0]], means[s[1]]});
  }
  average /= static_cast<double>(subsets.size());

  EpsilonGreedyOptions options{EpsilonSchedule::constant(1.0)};
  RandomSource rng(4);
  const std::int64_t horizon = 200'000;
  const RegretTrace trace = run_epsilon_greedy(env, horizon, options, rng);
  const double regret = cumulative_regret(trace, {horizon}).back().cumulative_regret;
  const double expected = horizon * (env.best_reward() - average);
  // Each step's regret depends only on a uniformly drawn action; its spread is below 0.5.
  EXPECT_NEAR(regret / horizon, expected / horizon, 5.0 * 0.5 / std::sqrt(static_cast<double>(horizon)));
}

TEST(EpsilonGreedyTest, NoRegretWhenAllActionsEqual) {
  const Environment env = Environment::bernoulli({0.5, 0.5, 0.5, 0.5}, 2, JointReward::Mean, TiePolicy::Allow);
  EpsilonGreedyOptions options{EpsilonSchedule::constant(0.0)};
  RandomSource rng(5);
  const RegretTrace trace = run_epsilon_greedy(env, 1000, options, rng);
  EXPECT_EQ(cumulative_regret(trace, {1000}).back().cumulative_regret, 0.0);
}

TEST(EpsilonGreedyTest, DecayingScheduleIsSublinear) {
  const Environment env = Environment::bernoulli({0.9, 0.8, 0.4, 0.3, 0.1, 0.2}, 2, JointReward::Mean);
  EpsilonGreedyOptions options;
  RandomSource rng(6);
  const RegretTrace trace = run_epsilon_greedy(env, 40'000, options, rng);
  const auto points = cumulative_regret(trace, {20'000, 40'000});
  EXPECT_LT(points[1].cumulative_regret, 1.5 * points[0].cumulative_regret);
  EXPECT_EQ(trace.final_action, env.best_action());
}

TEST(EpsilonGreedyTest, WarmStartPlaysEveryActionFirst) {
  const Environment env = Environment::bernoulli({0.9, 0.8, 0.4, 0.3}, 2, JointReward::Mean);
  EpsilonGreedyOptions options{EpsilonSchedule::constant(0.0), true};
  RandomSource rng(7);
  const RegretTrace trace = run_epsilon_greedy(env, 6, options, rng);
  const ActionIndexTable table(4, 2);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(trace.mu[i], env.expected_reward(table.action(i)));
}

TEST(OracleTest, ZeroRegret) {
  const Environment env = Environment::correlated_gaussian(8, 0.05, 1.0, {2, 5, 7});
  const RegretTrace trace = run_oracle(env, 500);
  EXPECT_EQ(trace.steps(), 500);
  EXPECT_EQ(trace.final_action, make_action({2, 5, 7}, 8));
  EXPECT_EQ(cumulative_regret(trace).back().cumulative_regret, 0.0);
}

}  // namespace
}  // namespace combandit::baselines
