#include "combandit/environment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "combandit/error.hpp"
#include "test_oracles.hpp"

namespace combandit {
namespace {

using testing::all_subsets;
using testing::enumerate_bernoulli;
using testing::reference_f;

constexpr JointReward kAllRewards[] = {JointReward::Mean, JointReward::Sum, JointReward::Quadratic, JointReward::Max};

TEST(JointRewardTest, MatchesDefinitions) {
  const std::vector<double> d{0.25, 1.0, 0.5};
  EXPECT_DOUBLE_EQ(evaluate_joint_reward(JointReward::Mean, d), 1.75 / 3.0);
  EXPECT_DOUBLE_EQ(evaluate_joint_reward(JointReward::Sum, d), 1.75);
  EXPECT_DOUBLE_EQ(evaluate_joint_reward(JointReward::Max, d), 1.0);
  EXPECT_DOUBLE_EQ(evaluate_joint_reward(JointReward::Quadratic, d), reference_f(JointReward::Quadratic, d));
  // All-ones input: the quadratic weights sum to one.
  for (int k = 1; k <= 8; ++k) {
    EXPECT_NEAR(evaluate_joint_reward(JointReward::Quadratic, std::vector<double>(k, 1.0)), 1.0, 1e-15);
  }
}

TEST(JointRewardTest, PermutationInvariantBitForBit) {
  RandomSource rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + trial % 4;
    std::vector<double> d(k);
    for (double& x : d) x = rng.normal() * 3.0 + 0.5;
    std::sort(d.begin(), d.end());
    for (JointReward r : kAllRewards) {
      const double base = evaluate_joint_reward(r, d);
      std::vector<double> p = d;
      do {
        ASSERT_EQ(evaluate_joint_reward(r, p), base);
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }
}

TEST(EnvironmentTest, DegenerateArms) {
  RandomSource rng(1);
  const Environment ones = Environment::bernoulli({1.0, 1.0}, 2, JointReward::Mean);
  const Action both = make_action({0, 1}, 2);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(ones.sample(both, rng).joint_reward, 1.0);

  for (JointReward r : kAllRewards) {
    const Environment zeros = Environment::bernoulli({0.0, 0.0, 0.0, 0.0}, 2, r, TiePolicy::Allow);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(zeros.sample(make_action({1, 3}, 4), rng).joint_reward, 0.0);
  }
}

TEST(EnvironmentTest, SampleReportsHiddenArmRewards) {
  RandomSource rng(3);
  const Environment env = Environment::bernoulli({0.3, 0.6, 0.9, 0.1}, 3, JointReward::Quadratic);
  const Action a = make_action({0, 2, 3}, 4);
  for (int i = 0; i < 200; ++i) {
    const RewardSample s = env.sample(a, rng);
    ASSERT_EQ(s.arm_rewards.size(), 3u);
    EXPECT_EQ(s.joint_reward, evaluate_joint_reward(JointReward::Quadratic, s.arm_rewards));
  }
}

TEST(EnvironmentTest, CorrelatedNoiseQuadruplesVariance) {
  // Sum over K=2 arms sharing one N(0,1) draw: variance K^2 sigma^2 = 4, not 2.
  const Environment env = Environment::correlated_gaussian(4, 0.0, 1.0, {0, 1});
  RandomSource rng(5);
  const Action a = make_action({2, 3}, 4);
  const int m = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < m; ++i) {
    const RewardSample s = env.sample(a, rng);
    EXPECT_EQ(s.arm_rewards[0], s.arm_rewards[1]);
    sum += s.joint_reward;
    sq += s.joint_reward * s.joint_reward;
  }
  const double mean = sum / m;
  const double var = sq / m - mean * mean;
  EXPECT_NEAR(mean, 1.0, 5.0 * 2.0 / std::sqrt(m));
  EXPECT_NEAR(var, 4.0, 5.0 * 4.0 * std::sqrt(2.0 / m));
}

TEST(EnvironmentTest, ExpectedRewardExamples) {
  const std::vector<double> p{0.2, 0.8};
  const Action both = make_action({0, 1}, 2);
  EXPECT_DOUBLE_EQ(Environment::bernoulli(p, 2, JointReward::Mean).expected_reward(both), 0.5);
  // Frozen from outcome enumeration: 1 - 0.8 * 0.2.
  EXPECT_NEAR(Environment::bernoulli(p, 2, JointReward::Max).expected_reward(both), 0.84, 1e-15);
  // Frozen from outcome enumeration: (0.5 + 0.25 + 0.5) / 3.
  const Environment quad = Environment::bernoulli({0.5, 0.5}, 2, JointReward::Quadratic);
  EXPECT_NEAR(quad.expected_reward(both), 0.41666666666666663, 1e-15);

  const Environment gauss = Environment::correlated_gaussian(5, 0.1, 1.0, {1, 3});
  EXPECT_NEAR(gauss.expected_reward(make_action({1, 3}, 5)), 1.2, 1e-15);
  EXPECT_NEAR(gauss.expected_reward(make_action({0, 3}, 5)), 1.1, 1e-15);
}

TEST(EnvironmentTest, ClosedFormsMatchEnumeration) {
  RandomSource rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 7;
    const int k = 1 + trial % 5;
    std::vector<double> means(n);
    for (double& m : means) m = rng.uniform();
    for (JointReward r : kAllRewards) {
      const Environment env = Environment::bernoulli(means, k, r, TiePolicy::Allow);
      for (const auto& arms : all_subsets(n, k)) {
        std::vector<double> p;
        for (Arm a : arms) p.push_back(means[a]);
        ASSERT_NEAR(env.expected_reward(make_action(arms, n)), enumerate_bernoulli(r, p), 1e-12);
      }
    }
  }
}

TEST(EnvironmentTest, BestActionExamples) {
  EXPECT_EQ(Environment::bernoulli({0.1, 0.9, 0.5, 0.7}, 2, JointReward::Mean).best_action(), make_action({1, 3}, 4));
  EXPECT_EQ(Environment::bernoulli({0.3, 0.3, 0.3, 0.9}, 1, JointReward::Mean).best_action(), make_action({3}, 4));
}

TEST(EnvironmentTest, BestActionIsBruteForceArgmax) {
  RandomSource rng(21);
  for (JointReward r : kAllRewards) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> means(6);
      for (double& m : means) m = rng.uniform();
      const Environment env = Environment::bernoulli(means, 3, r);
      double best = -1.0;
      std::vector<Arm> argmax;
      for (const auto& arms : all_subsets(6, 3)) {
        std::vector<double> p;
        for (Arm a : arms) p.push_back(means[a]);
        const double v = enumerate_bernoulli(r, p);
        if (v > best) {
          best = v;
          argmax = arms;
        }
      }
      EXPECT_EQ(env.best_action(), make_action(argmax, 6));
      EXPECT_NEAR(env.best_reward(), best, 1e-12);
    }
  }
}

TEST(EnvironmentTest, UnitRewardsStayInUnitInterval) {
  RandomSource rng(12);
  for (JointReward r : {JointReward::Mean, JointReward::Quadratic, JointReward::Max}) {
    const Environment env = Environment::bernoulli({0.2, 0.9, 0.5, 0.7, 0.4}, 4, r);
    for (int i = 0; i < 2000; ++i) {
      const double v = env.sample(make_action({0, 1, 3, 4}, 5), rng).joint_reward;
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST(EnvironmentTest, MonteCarloAgreesWithClosedForm) {
  RandomSource rng(31);
  const int m = 100000;
  for (JointReward r : kAllRewards) {
    const Environment env = Environment::bernoulli({0.15, 0.8, 0.55, 0.35, 0.95}, 3, r);
    const Action a = make_action({0, 2, 4}, 5);
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < m; ++i) {
      const double v = env.sample(a, rng).joint_reward;
      sum += v;
      sq += v * v;
    }
    const double mean = sum / m;
    const double se = std::sqrt((sq / m - mean * mean) / m);
    EXPECT_LE(std::fabs(mean - env.expected_reward(a)), 5.0 * se) << to_string(r);
  }
}

TEST(EnvironmentTest, SamplingIsDeterministic) {
  const Environment env = Environment::bernoulli({0.3, 0.6, 0.9}, 2, JointReward::Max);
  RandomSource a(77), b(77);
  const Action act = make_action({0, 2}, 3);
  for (int i = 0; i < 500; ++i) {
    const RewardSample x = env.sample(act, a);
    const RewardSample y = env.sample(act, b);
    ASSERT_EQ(x.arm_rewards, y.arm_rewards);
    ASSERT_EQ(x.joint_reward, y.joint_reward);
  }
}

TEST(EnvironmentTest, ConstructionErrors) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const BanditError& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  EXPECT_NO_THROW(Environment::bernoulli({0.5, 0.7, 0.5}, 1, JointReward::Mean));
  EXPECT_NO_THROW(Environment::bernoulli({0.7, 0.5, 0.5}, 2, JointReward::Mean, TiePolicy::Allow));
  EXPECT_EQ(code_of([] { Environment::bernoulli({0.7, 0.5, 0.5}, 2, JointReward::Mean); }),
            ErrorCode::InvalidEnvironment);
  EXPECT_EQ(code_of([] { Environment::bernoulli({0.7, 1.5}, 1, JointReward::Mean); }), ErrorCode::InvalidEnvironment);
  EXPECT_EQ(code_of([] { Environment::correlated_gaussian(4, 0.1, 1.0, {0, 1}, JointReward::Max); }),
            ErrorCode::UnsupportedCombination);
  EXPECT_EQ(code_of([] { Environment::correlated_gaussian(4, 0.1, 0.0, {0, 1}); }), ErrorCode::InvalidEnvironment);

  const Environment env = Environment::bernoulli({0.1, 0.2, 0.3}, 2, JointReward::Mean);
  EXPECT_EQ(code_of([&] { env.expected_reward(make_action({0}, 3)); }), ErrorCode::WrongArity);
  EXPECT_EQ(code_of([&] { env.expected_reward(make_action({0, 4}, 5)); }), ErrorCode::OutOfRange);
}

}  // namespace
}  // namespace combandit
