#include <gtest/gtest.h>

#include "combandit/dart.hpp"
#include "combandit/presets.hpp"

namespace combandit::dart {
namespace {

const Environment& ladder() {
  static const Environment env = Environment::bernoulli({0.9, 0.8, 0.1, 0.05}, 2, JointReward::Mean);
  return env;
}

TEST(AnytimeTest, SegmentBoundariesDouble) {
  RandomSource rng(1);
  const RegretTrace trace = run_dart_anytime(ladder(), 7, rng);
  EXPECT_EQ(trace.steps(), 7);
  EXPECT_EQ(trace.segment_ends, (std::vector<std::int64_t>{1, 3, 7}));
}

TEST(AnytimeTest, PartialSegmentIsNotRecorded) {
  RandomSource rng(1);
  const RegretTrace trace = run_dart_anytime(ladder(), 40, rng);
  EXPECT_EQ(trace.steps(), 40);
  EXPECT_EQ(trace.segment_ends, (std::vector<std::int64_t>{1, 3, 7, 15, 31}));
}

TEST(AnytimeTest, StopPredicateSeesEveryStep) {
  RandomSource rng(2);
  std::int64_t last = -1;
  bool monotone = true;
  const RegretTrace trace = run_dart_anytime(ladder(), rng, [&](std::int64_t steps) {
    monotone = monotone && steps >= last;
    last = steps;
    return steps >= 100;
  });
  EXPECT_TRUE(monotone);
  EXPECT_EQ(trace.steps(), 100);
}

TEST(AnytimeTest, SegmentsUseIndependentStreams) {
  RandomSource a(3), b(3);
  const RegretTrace ta = run_dart_anytime(ladder(), 1000, a, kPresetEpochConstant);
  const RegretTrace tb = run_dart_anytime(ladder(), 1000, b, kPresetEpochConstant);
  EXPECT_EQ(ta.mu, tb.mu);
  for (double mu : ta.mu) ASSERT_LE(mu, ladder().best_reward());
}

}  // namespace
}  // namespace combandit::dart
