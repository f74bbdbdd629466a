#include "combandit/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace combandit {
namespace {

TEST(RandomSourceTest, SameSeedSameStream) {
  RandomSource a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
}

TEST(RandomSourceTest, SplitIgnoresParentPosition) {
  RandomSource fresh(7);
  RandomSource advanced(7);
  for (int i = 0; i < 1000; ++i) advanced();
  RandomSource x = fresh.split("environment");
  RandomSource y = advanced.split("environment");
  RandomSource z = fresh.split("permutation");
  for (int i = 0; i < 50; ++i) {
    const auto v = x();
    EXPECT_EQ(v, y());
    EXPECT_NE(v, z());
  }
}

TEST(RandomSourceTest, ReplicationSeedsDistinct) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t r = 0; r < 1000; ++r) seeds.push_back(replication_seed(5, r));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
  EXPECT_NE(replication_seed(5, 0), replication_seed(6, 0));
}

TEST(RandomSourceTest, UniformMoments) {
  RandomSource rng(1);
  const int m = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < m; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / m;
  EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12.0 / m));
  EXPECT_NEAR(sq / m - mean * mean, 1.0 / 12.0, 0.002);
}

TEST(RandomSourceTest, NormalMoments) {
  RandomSource rng(2);
  const int m = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < m; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / m, 0.0, 5.0 / std::sqrt(m));
  EXPECT_NEAR(sq / m, 1.0, 5.0 * std::sqrt(2.0 / m));
}

TEST(RandomSourceTest, BelowIsRoughlyUniform) {
  RandomSource rng(3);
  const int bins = 7, m = 70000;
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < m; ++i) {
    const auto v = rng.below(bins);
    ASSERT_LT(v, static_cast<std::uint64_t>(bins));
    ++counts[v];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(m) / bins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);  // 99.9% quantile, 6 degrees of freedom
}

TEST(RandomSourceTest, ShuffleIsPermutation) {
  RandomSource rng(4);
  std::vector<int> v(20);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 20; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(RandomSourceTest, BernoulliEdges) {
  RandomSource rng(5);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(rng.bernoulli(1.0));
    EXPECT_FALSE(rng.bernoulli(0.0));
  }
}

}  // namespace
}  // namespace combandit
