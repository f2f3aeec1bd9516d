#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sagimec/bandit.hpp"

using namespace sagimec;

namespace {
std::vector<SatelliteSpec> two_sats() {
  return {{0, 16e-8, 31e-8, 1e-7}, {1, 18e-8, 33e-8, 8e-8}};
}
}  // namespace

TEST(Bandit, FirstSlotPredictsLowerBound) {
  BanditStats b(two_sats());
  b.tick_visibility(1, {0, 1});
  EXPECT_DOUBLE_EQ(b.predict_rtt(0, 1), 16e-8);
  EXPECT_DOUBLE_EQ(b.predict_rtt(1, 1), 18e-8);
}

TEST(Bandit, UnpulledArmStaysAtLowerBound) {
  BanditStats b(two_sats());
  for (int t = 1; t <= 50; ++t) b.tick_visibility(t, {0, 1});
  EXPECT_DOUBLE_EQ(b.predict_rtt(0, 50), 16e-8);
}

TEST(Bandit, FrozenUcbValue) {
  // One arm, 1000 visible slots, 100 pulls all observing 25e-8; with
  // omega_0 = 15e-8 the optimistic estimate is
  // 25e-8 - 15e-8 * sqrt(3 ln(1000) / 200).
  std::vector<SatelliteSpec> sats = {{0, 16e-8, 31e-8, 1e-7}};
  BanditStats b(sats);
  for (int t = 1; t <= 1000; ++t) {
    b.tick_visibility(t, {0});
    if (t <= 100) b.record_feedback(0, 25e-8);
  }
  EXPECT_NEAR(b.predict_rtt(0, 1000), 2.0171576440848968e-07, 1e-9 * 2.017e-7);
}

TEST(Bandit, ClampsToLowerBound) {
  std::vector<SatelliteSpec> sats = {{0, 16e-8, 31e-8, 1e-7}};
  BanditStats b(sats);
  for (int t = 1; t <= 1000; ++t) b.tick_visibility(t, {0});
  b.record_feedback(0, 17e-8);  // one pull, huge bonus
  EXPECT_DOUBLE_EQ(b.predict_rtt(0, 1000), 16e-8);
}

TEST(Bandit, FeedbackRunningMean) {
  BanditStats b(two_sats());
  b.tick_visibility(1, {0, 1});
  b.record_feedback(0, 2e-7);
  EXPECT_DOUBLE_EQ(b.arm(0).mean_rtt, 2e-7);
  EXPECT_EQ(b.arm(0).pull_count, 1);
  b.record_feedback(0, 4e-7);
  EXPECT_DOUBLE_EQ(b.arm(0).mean_rtt, 3e-7);
  EXPECT_EQ(b.arm(0).pull_count, 2);
  EXPECT_EQ(b.arm(1).pull_count, 0);  // untouched arm unchanged
}

TEST(Bandit, VisibilityCounting) {
  BanditStats b(two_sats());
  for (int t = 1; t <= 300; ++t) b.tick_visibility(t, {0});
  EXPECT_EQ(b.arm(0).visible_count, 300);
  EXPECT_EQ(b.arm(1).visible_count, 0);
}

TEST(Bandit, DoubleTickSameSlotThrows) {
  BanditStats b(two_sats());
  b.tick_visibility(1, {0, 1});
  EXPECT_THROW(b.tick_visibility(1, {0, 1}), std::logic_error);
  b.tick_visibility(2, {0});
}

TEST(Bandit, UnknownSatelliteThrows) {
  BanditStats b(two_sats());
  b.tick_visibility(1, {0, 1});
  EXPECT_THROW(b.predict_rtt(9, 1), std::invalid_argument);
  EXPECT_THROW(b.record_feedback(9, 1e-7), std::invalid_argument);
  EXPECT_THROW(b.arm(9), std::invalid_argument);
}

TEST(Bandit, BonusShrinksWithPulls) {
  // More pulls at a fixed empirical mean raise the optimistic estimate
  // toward the mean (the bonus is strictly decreasing in h).
  std::vector<SatelliteSpec> sats = {{0, 16e-8, 31e-8, 1e-7}};
  BanditStats b(sats);
  for (int t = 1; t <= 2000; ++t) b.tick_visibility(t, {0});
  double prev = 0.0;
  for (int pulls = 1; pulls <= 64; pulls *= 2) {
    while (b.arm(0).pull_count < pulls) b.record_feedback(0, 25e-8);
    double cur = b.predict_rtt(0, 2000);
    EXPECT_GE(cur, prev);
    prev = cur;
  }
  EXPECT_GT(prev, 16e-8);  // eventually unclamped and approaching the mean
}

TEST(Bandit, BonusGrowsWithVisibility) {
  // At fixed pulls, more visible slots lower the optimistic estimate until
  // the lower-bound clamp engages.
  std::vector<SatelliteSpec> sats = {{0, 16e-8, 31e-8, 1e-7}};
  BanditStats b(sats);
  int t = 1;
  for (; t <= 10; ++t) b.tick_visibility(t, {0});
  for (int i = 0; i < 50; ++i) b.record_feedback(0, 25e-8);
  double prev = b.predict_rtt(0, t - 1);
  for (int epoch = 0; epoch < 6; ++epoch) {
    for (int k = 0; k < 500; ++k, ++t) b.tick_visibility(t, {0});
    double cur = b.predict_rtt(0, t - 1);
    EXPECT_LE(cur, prev);
    EXPECT_GE(cur, 16e-8);
    prev = cur;
  }
}

TEST(Bandit, DecimalLogOption) {
  std::vector<SatelliteSpec> sats = {{0, 16e-8, 31e-8, 1e-7}};
  BanditStats b(sats, BonusLog::decimal);
  for (int t = 1; t <= 1000; ++t) {
    b.tick_visibility(t, {0});
    if (t <= 100) b.record_feedback(0, 25e-8);
  }
  double expected =
      25e-8 - 15e-8 * std::sqrt(3.0 * std::log10(1000.0) / 200.0);
  EXPECT_NEAR(b.predict_rtt(0, 1000), expected, 1e-9 * expected);
}

TEST(Bandit, DumpListsAllArms) {
  BanditStats b(two_sats());
  b.tick_visibility(1, {0, 1});
  b.record_feedback(1, 2e-7);
  nlohmann::json d = b.dump();
  ASSERT_TRUE(d.is_array());
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0]["id"], 0);
  EXPECT_EQ(d[1]["pull_count"], 1);
  EXPECT_EQ(d[0]["visible_count"], 1);
}
