#include <gtest/gtest.h>

#include <cmath>

#include "seprate/testkit.hpp"

using namespace seprate;

TEST(Levels, Validates) {
  EXPECT_THROW(Levels(0.0, 0.1), DomainError);
  EXPECT_THROW(Levels(0.1, 0.5), DomainError);
  EXPECT_THROW(Levels::split(1.0), DomainError);
  const Levels l(0.05, 0.1);
  EXPECT_DOUBLE_EQ(l.delta(), 0.05);
  EXPECT_DOUBLE_EQ(l.eta(), 0.15);
  EXPECT_DOUBLE_EQ(Levels::split(0.1).alpha(), 0.05);
}

TEST(TestKind, ParseRoundTrip) {
  for (auto k : {TestKind::HalfSpace, TestKind::PlugIn, TestKind::Rounded, TestKind::Ball}) {
    EXPECT_EQ(parse_test_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_test_kind("bogus"), DomainError);
}

TEST(Thresholds, FrozenValues) {
  EXPECT_NEAR(halfspace_threshold(100, 0.05), 0.244774683068081655, 1e-15);
  EXPECT_NEAR(plugin_threshold_squared(4, 1, 0.05), 16.9147380775171233, 1e-13);
  EXPECT_NEAR(rounded_threshold(10, 100, 1, 0.05), 0.504402524382960072, 1e-14);
  EXPECT_NEAR(ball_threshold(10, 100, 1, 0.05), 0.661553470701479270, 1e-14);
}

TEST(GuaranteedSeparation, FrozenValues) {
  const Levels l(0.05, 0.05);
  EXPECT_NEAR(guaranteed_separation(TestSpec(TestKind::HalfSpace, ConvexBody::canonical_half_space(3), l),
                                    ModelParams(3, 100))
                  .rho,
              0.489549366136163309, 1e-14);
  const Radius plug = guaranteed_separation(TestSpec(TestKind::PlugIn, ConvexBody::orthant(4), l), ModelParams(4, 1));
  EXPECT_NEAR(plug.rho, 8.22550620388000761, 1e-13);
  const Radius rounded = guaranteed_separation(
      TestSpec(TestKind::Rounded, ConvexBody::ball(Point::Zero(10), 1.0), l), ModelParams(10, 100));
  EXPECT_NEAR(rounded.rho, 0.504402524382960072 + 0.244774683068081655, 1e-14);
}

TEST(GuaranteedSeparation, BallBranches) {
  const Levels l(0.05, 0.05);
  const double sa = std::sqrt(std::log(20.0));
  const double n = 100.0;
  const double floor_term = std::sqrt(2.0 / n) * 3.0 * sa;
    const Radius small = ball_upper_separation(10000, n, 0.01, l);
  EXPECT_EQ(small.branch, "d^(1/4)/sqrt(n)");
  EXPECT_NEAR(small.rho, std::sqrt(2.0) * 10.0 / 10.0 * 2.0 * sa + floor_term, 1e-13);
  const Radius large = ball_upper_separation(10000, n, 100.0, l);
  EXPECT_EQ(large.branch, "sqrt(d)/(nR)");
  EXPECT_NEAR(large.rho, 100.0 / (1e4 + 20.0 * sa) * 2.0 * sa + floor_term, 1e-14);
  EXPECT_LE(large.rho, small.rho);
}

TEST(TestSpec, Validates) {
  const Levels l(0.05, 0.05);
  EXPECT_THROW(TestSpec(TestKind::HalfSpace, ConvexBody::orthant(2), l), DomainError);
  EXPECT_THROW(TestSpec(TestKind::Ball, ConvexBody::orthant(2), l), DomainError);
  EXPECT_THROW(TestSpec(TestKind::Rounded, ConvexBody::orthant(2), l), DomainError);
  EXPECT_NO_THROW(TestSpec(TestKind::Rounded, ConvexBody::orthant(2), l, 1.0));
  EXPECT_NO_THROW(TestSpec(TestKind::Rounded, ConvexBody::inflated(ConvexBody::orthant(2), 2.0), l));
  EXPECT_THROW(TestSpec(TestKind::PlugIn, ConvexBody::orthant(2), l, -1.0), DomainError);
}

TEST(RunTest, DecisionsAtExtremes) {
  const Levels l(0.05, 0.05);
  const ModelParams p(2, 100);
  const TestSpec hs(TestKind::HalfSpace, ConvexBody::canonical_half_space(2), l);
  EXPECT_FALSE(run_test(hs, p, Point::Zero(2)).reject);
  EXPECT_TRUE(run_test(hs, p, Point::Unit(2, 1)).reject);
  const TestSpec plug(TestKind::PlugIn, ConvexBody::orthant(2), l);
  const TestOutcome far = run_test(plug, p, Point::Constant(2, 3.0));
  EXPECT_TRUE(far.reject);
  EXPECT_NEAR(far.statistic, 3.0 * std::sqrt(2.0), 1e-14);
  EXPECT_DOUBLE_EQ(far.threshold, test_threshold(plug, p));
  const TestSpec ball(TestKind::Ball, ConvexBody::ball(Point::Zero(2), 1.0), l);
  EXPECT_FALSE(run_test(ball, p, Point::Unit(2, 0)).reject);
  EXPECT_TRUE(run_test(ball, p, 3.0 * Point::Unit(2, 0)).reject);
  EXPECT_THROW(run_test(plug, p, Point::Zero(3)), DimensionMismatch);
}

TEST(RunTest, TypeOneErrorAtBoundary) {
  const Levels l(0.05, 0.05);
  const ModelParams p(5, 50);
  const TestSpec spec(TestKind::PlugIn, ConvexBody::orthant(5), l);
  long rejects = 0;
  constexpr long kReps = 20000;
  for (long i = 0; i < kReps; ++i) {
    rejects += run_test(spec, p, sample(p, Point::Zero(5), {77, static_cast<std::uint64_t>(i)})).reject;
  }
  EXPECT_LE(static_cast<double>(rejects) / kReps, 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / kReps));
}

TEST(BallSideCondition, Threshold) {
  EXPECT_TRUE(ball_side_condition_holds(3, 0.1));
  EXPECT_FALSE(ball_side_condition_holds(2, 0.1));
}
