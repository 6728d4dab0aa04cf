#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "seprate/rng.hpp"

using namespace seprate;

TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(CounterRng, SameSeedSameStream) {
  CounterRng a({42, 7}), b({42, 7});
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.normal(), b.normal());
}

TEST(CounterRng, StreamsDiffer) {
  CounterRng a({42, 7}), b({42, 8}), c({43, 7});
  const auto x = a.next_u64();
  EXPECT_NE(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(CounterRng, UniformInUnitInterval) {
  CounterRng rng({1, 0});
  double sum = 0.0;
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / kN, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / kN));
}

TEST(CounterRng, NormalMoments) {
  CounterRng rng({2, 0});
  constexpr int kN = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  EXPECT_NEAR(s1 / kN, 0.0, 4.0 / std::sqrt(kN));
  EXPECT_NEAR(s2 / kN, 1.0, 4.0 * std::sqrt(2.0 / kN));
  EXPECT_NEAR(s4 / kN, 3.0, 4.0 * std::sqrt(96.0 / kN));
}

TEST(CounterRng, FillNormalMatchesSequentialDraws) {
  CounterRng a({5, 3}), b({5, 3});
  std::vector<double> buf(9);
  a.fill_normal(buf);
  for (double x : buf) EXPECT_EQ(x, b.normal());
}

TEST(DeriveMaster, DistinctTagsDistinctSeeds) {
  EXPECT_NE(derive_master(1, 1), derive_master(1, 2));
  EXPECT_NE(derive_master(1, 1), derive_master(2, 1));
  EXPECT_EQ(derive_master(9, 4), derive_master(9, 4));
}
