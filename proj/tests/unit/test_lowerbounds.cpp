#include <gtest/gtest.h>

#include <cmath>

#include "seprate/lowerbounds.hpp"

using namespace seprate;

TEST(TwoPoint, FrozenValues) {
  EXPECT_NEAR(two_point_separation(100, 0.5), 0.0832554611157697756, 1e-15);
  EXPECT_NEAR(two_point_separation(100, 0.1), 0.120189985824271832, 1e-15);
  EXPECT_THROW(two_point_separation(100, 1.0), DomainError);
  EXPECT_DOUBLE_EQ(chi2_two_point(4, 0.5), std::exp(1.0));
}

TEST(TwoPoint, QuadratureAgrees) {
  for (double rho : {0.01, 0.1, 0.14}) {
    const DivergenceReport r = chi2_two_point_report(100, rho);
    EXPECT_LE(r.abs_gap, 1e-9 * r.formula_value) << rho;
    EXPECT_FALSE(r.method.empty());
  }
}

TEST(BallPrior, DivergenceAndQuadrature) {
  EXPECT_NEAR(ball_prior_divergence(1, 2, 1), 1.54308063481524378, 1e-15);
  const DivergenceReport r = ball_prior_divergence_report(50, 6, 0.1);
  EXPECT_LE(r.abs_gap, 1e-9 * r.formula_value);
  EXPECT_NEAR(ball_rho_from_h(7, 2.0, ball_h_from_rho(7, 2.0, 0.3)), 0.3, 1e-14);
}

TEST(BallPrior, LowerSeparation) {
  EXPECT_NEAR(ball_lower_separation(1, 3, 1.0, 0.5), 0.356183637747034558, 1e-15);
  EXPECT_THROW(ball_lower_separation(1, 2, 1.0, 0.5), DomainError);
  EXPECT_GT(ball_lower_separation(100, 16, 0.05, 0.5), ball_lower_separation(100, 16, 50.0, 0.5));
}

TEST(CoshTaylor, Dominates) {
  for (double x = 0.0; x <= 1.0; x += 1e-3) EXPECT_GE(cosh_taylor_bound(x), std::cosh(x));
  EXPECT_THROW(cosh_taylor_bound(1.5), DomainError);
}

TEST(PriorOrder, Values) {
  EXPECT_EQ(prior_order(42, 0.5), 36);
  EXPECT_EQ(prior_order(64, 0.3), 36);
  EXPECT_EQ(prior_order(2, 0.5), 32);
  EXPECT_THROW(prior_order(42, 0.9), DomainError);
}

TEST(PriorParameters, FrozenValues) {
  const PriorParameters p = orthant_prior_parameters(42, 0.5);
  EXPECT_EQ(p.M, 36);
  EXPECT_NEAR(p.c, 0.252363214655676688, 1e-15);
  EXPECT_NEAR(p.b, 1.51417928793406013, 1e-14);
  EXPECT_NEAR(p.u, 2.92087053999625796e-4, 1e-18);
  EXPECT_NEAR(p.rho, 1.09288968317873896e-3, 1e-17);
  EXPECT_NEAR(p.rho_rounded, 1.07155104140341604e-3, 1e-17);
  EXPECT_LE(p.rho_rounded, p.rho);
  const PriorParameters q = orthant_prior_parameters(42, 0.5, 100.0);
  EXPECT_NEAR(q.rho, p.rho / 10.0, 1e-17);
  EXPECT_THROW(orthant_prior_parameters(41, 0.5), DomainError);
  EXPECT_THROW(orthant_prior_parameters(42, 0.5, 1.0, true), DomainError);
}

TEST(TvBound, FrozenValues) {
  EXPECT_NEAR(tv_bound_product(36, 42), 0.598609755461405510, 1e-14);
  EXPECT_NEAR(tv_bound_product(32, 1), 0.0263283396694731160, 1e-16);
  EXPECT_THROW(tv_bound_product(31, 1), DomainError);
}

TEST(TvDistance, GaussianShift) {
  double err = 0.0;
  const double tv = tv_distance_1d(DiscretePrior::dirac(0.0), DiscretePrior::dirac(1.0), 1.0, &err);
  EXPECT_NEAR(tv, 0.765849845096052415, 1e-10);
  EXPECT_LE(err, 1e-8);
  EXPECT_NEAR(tv_distance_1d(DiscretePrior::dirac(0.5), DiscretePrior::dirac(0.5), 0.3), 0.0, 1e-12);
}

TEST(InflatedOrthant, FrozenValue) {
  const Radius r = inflated_orthant_rho(43, 1.0, 1.0, 0.5);
  EXPECT_NEAR(r.rho, 2.87055408583186361e-7, 1e-20);
  EXPECT_EQ(r.branch, "(d-1)s^2/R");
  const Radius small = inflated_orthant_rho(43, 1.0, 1e-12, 0.5);
  EXPECT_EQ(small.branch, "sqrt(3)sqrt(d-1)s");
  EXPECT_NEAR(small.rho, std::sqrt(3.0) * std::sqrt(42.0) * 2.86384062098028653e-4 / 12.0, 1e-18);
  EXPECT_THROW(inflated_orthant_rho(42, 1.0, 1.0, 0.5), DomainError);
}

TEST(ConditionalPrior, DrawsHitThreshold) {
  const DiscretePrior nu1({{-1.0, 0.4}, {0.25, 0.6}});
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ConditionalDraw draw = sample_conditional_prior(nu1, 30, {5, s});
    EXPECT_GE(draw.count_at_u, 10);
    EXPECT_GE(draw.attempts, 1);
    int at_u = 0;
    for (int i = 0; i < 30; ++i) {
      EXPECT_TRUE(draw.mu(i) == -1.0 || draw.mu(i) == 0.25);
      at_u += draw.mu(i) == 0.25;
    }
    EXPECT_EQ(at_u, draw.count_at_u);
  }
  const ConditionalDraw shifted = sample_conditional_prior(nu1, 31, {5, 0}, 2.0);
  EXPECT_EQ(shifted.mu(30), 2.0);
  EXPECT_THROW(sample_conditional_prior(DiscretePrior({{-1.0, 0.999}, {0.25, 0.001}}), 300, {1, 1}),
               ConvergenceError);
}

TEST(ProductPrior, PinsShiftCoordinate) {
  const DiscretePrior nu0({{-1.0, 0.5}, {0.0, 0.5}});
  const Point mu = sample_product_prior(nu0, 5, {1, 2}, 3.0);
  EXPECT_EQ(mu(4), 3.0);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(mu(i) == -1.0 || mu(i) == 0.0);
}

TEST(BayesError, TrivialTests) {
  const ModelParams params(2, 10);
  const PriorSampler zero = [](Seed) { return Point(Point::Zero(2)); };
  const auto always = bayes_error_estimate([](const Point&, double) { return true; }, zero, zero, params, 1000, 1);
  EXPECT_EQ(always.type1, 1.0);
  EXPECT_EQ(always.type2, 0.0);
  const auto coin = bayes_error_estimate([](const Point&, double u) { return u < 0.5; }, zero, zero, params, 20000, 1);
  EXPECT_NEAR(coin.total, 1.0, coin.ci_radius);
  EXPECT_THROW(bayes_error_estimate([](const Point&, double) { return true; }, zero, zero, params, 10, 1),
               DomainError);
}
