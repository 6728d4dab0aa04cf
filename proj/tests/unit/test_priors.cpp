#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "seprate/errors.hpp"
#include "seprate/priors.hpp"

using namespace seprate;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Largest achievable mass at u: 2 / (1 + T_M(1 + 2u/b)).
double mass_oracle(int M, double b, double u) {
  const Big x = 1 + 2 * Big(u) / Big(b);
  const Big t = boost::multiprecision::cosh(M * boost::multiprecision::acosh(x));
  return static_cast<double>(2 / (1 + t));
}

double test_moment(const DiscretePrior& p, int k) {
  Big acc = 0;
  for (const Atom& a : p.atoms()) acc += Big(a.weight) * boost::multiprecision::pow(Big(a.location), k);
  return static_cast<double>(acc);
}

}  // namespace

TEST(DiscretePrior, Validates) {
  EXPECT_THROW(DiscretePrior({{0.0, 0.5}, {1.0, 0.4}}), DomainError);
  EXPECT_THROW(DiscretePrior({{0.0, -0.1}, {1.0, 1.1}}), DomainError);
  EXPECT_THROW(DiscretePrior({{std::nan(""), 1.0}}), DomainError);
  const DiscretePrior p({{-1.0, 0.25}, {2.0, 0.75}});
  EXPECT_EQ(p.min_location(), -1.0);
  EXPECT_EQ(p.max_location(), 2.0);
  EXPECT_EQ(p.mass_at(2.0), 0.75);
  EXPECT_EQ(p.mass_at(0.0), 0.0);
}

TEST(DiscretePrior, InverseCdfDraw) {
  const DiscretePrior p({{-1.0, 0.25}, {0.0, 0.0}, {2.0, 0.75}});
  EXPECT_EQ(p.draw(0.0), -1.0);
  EXPECT_EQ(p.draw(0.2499), -1.0);
  EXPECT_EQ(p.draw(0.25), 2.0);
  EXPECT_EQ(p.draw(0.9999), 2.0);
  EXPECT_EQ(DiscretePrior::dirac(3.5).draw(0.7), 3.5);
}

TEST(DiscretePrior, Moments) {
  const DiscretePrior p({{-1.0, 0.5}, {1.0, 0.5}});
  EXPECT_EQ(moment(p, 0), 1.0);
  EXPECT_EQ(moment(p, 1), 0.0);
  EXPECT_EQ(moment(p, 2), 1.0);
  EXPECT_EQ(max_moment_gap(p, DiscretePrior::dirac(0.0), 3), 1.0);
}

TEST(DiscretePrior, JsonRoundTrip) {
  const DiscretePrior p({{-0.1, 0.3}, {0.2, 0.7}});
  const DiscretePrior q = prior_from_json(prior_to_json(p));
  ASSERT_EQ(q.atoms().size(), 2u);
  EXPECT_EQ(q.atoms()[1].location, 0.2);
  EXPECT_EQ(q.atoms()[1].weight, 0.7);
  EXPECT_THROW(prior_from_json(nlohmann::json::parse(R"({"atoms":[[1]]})")), DomainError);
}

TEST(MomentPriors, OrderOneIsExact) {
  const MomentPriors mp = construct_moment_priors(1, 4.0, 64);
  EXPECT_DOUBLE_EQ(mp.u, 1.0);
  EXPECT_NEAR(mp.mass_at_u, 0.8, 1e-12);
  EXPECT_NEAR(mp.mass_at_u, mass_oracle(1, 4.0, 1.0), 1e-12);
}

TEST(MomentPriors, MatchesMomentsAndSupports) {
  for (auto [M, b] : {std::pair{6, 1.0}, std::pair{12, 0.7}, std::pair{36, 1.51417928793406013}}) {
    const MomentPriors mp = construct_moment_priors(M, b);
    EXPECT_DOUBLE_EQ(mp.u, b / (4.0 * M * M));
    EXPECT_GE(mp.nu0.min_location(), -b - 1e-15);
    EXPECT_LE(mp.nu0.max_location(), 1e-15);
    EXPECT_DOUBLE_EQ(mp.nu1.max_location(), mp.u);
    for (const Atom& a : mp.nu1.atoms()) {
      if (a.location != mp.u) EXPECT_LE(a.location, 1e-15);
      EXPECT_GE(a.location, -b - 1e-15);
    }
    for (int k = 0; k <= M; ++k) {
      const double scale = std::pow(b, k);
      EXPECT_NEAR(test_moment(mp.nu0, k) / scale, test_moment(mp.nu1, k) / scale, 1e-8) << M << " k=" << k;
    }
    const double oracle = mass_oracle(M, b, mp.u);
    EXPECT_GE(mp.mass_at_u, 0.5);
    EXPECT_LE(mp.mass_at_u, oracle + 1e-9) << M;
    EXPECT_GE(mp.mass_at_u, oracle - 2e-3) << M;
    EXPECT_NEAR(mp.nu1.mass_at(mp.u), mp.mass_at_u, 1e-15);
  }
}

TEST(MomentPriors, Validates) {
  EXPECT_THROW(construct_moment_priors(0, 1.0), DomainError);
  EXPECT_THROW(construct_moment_priors(4, 0.0), DomainError);
  EXPECT_THROW(construct_moment_priors(10, 1.0, 8), DomainError);
  EXPECT_THROW(construct_moment_priors(4, 1.0, 64, 0.0), DomainError);
}
