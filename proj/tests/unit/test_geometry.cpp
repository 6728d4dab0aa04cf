#include <gtest/gtest.h>

#include <cmath>

#include "seprate/geometry.hpp"

using namespace seprate;

namespace {

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

}  // namespace

TEST(Construction, Validates) {
  EXPECT_THROW(ConvexBody::half_space(vec({1, 1}), 0.0), DomainError);
  EXPECT_THROW(ConvexBody::orthant(0), DomainError);
  EXPECT_THROW(ConvexBody::ball(vec({0, 0}), 0.0), DomainError);
  EXPECT_THROW(ConvexBody::inflated(ConvexBody::orthant(2), -1.0), DomainError);
  EXPECT_THROW(ConvexBody::intersection({}, vec({0})), DomainError);
  EXPECT_THROW(ConvexBody::intersection({ConvexBody::orthant(2)}, vec({1, 0})), DomainError);
  EXPECT_EQ(ConvexBody::canonical_half_space(3).kind(), "halfspace");
  EXPECT_EQ(ConvexBody::inflated(ConvexBody::orthant(3), 1.0).dimension(), 3);
}

TEST(Project, Orthant) {
  const auto body = ConvexBody::orthant(3);
  EXPECT_TRUE(project(body, vec({1, -2, 3})).isApprox(vec({0, -2, 0})));
  EXPECT_NEAR(distance(body, vec({3, -1, 4})), 5.0, 1e-15);
  EXPECT_EQ(distance(body, vec({-1, -1, -1})), 0.0);
}

TEST(Project, HalfSpace) {
  const auto body = ConvexBody::half_space(vec({0.6, 0.8}), 1.0);
  const Point p = project(body, vec({3, 4}));
  EXPECT_NEAR(p(0), 0.6, 1e-15);
  EXPECT_NEAR(p(1), 0.8, 1e-15);
  EXPECT_NEAR(distance(body, vec({3, 4})), 4.0, 1e-15);
}

TEST(Project, Ball) {
  const auto body = ConvexBody::ball(vec({1, 1}), 1.0);
  const Point p = project(body, vec({4, 5}));
  EXPECT_NEAR(p(0), 1.6, 1e-15);
  EXPECT_NEAR(p(1), 1.8, 1e-15);
  EXPECT_NEAR(distance(body, vec({4, 5})), 4.0, 1e-15);
  EXPECT_TRUE(project(body, vec({1.2, 1.1})).isApprox(vec({1.2, 1.1})));
}

TEST(Project, InflatedOrthant) {
  const auto body = ConvexBody::inflated(ConvexBody::orthant(2), 1.0);
  const Point p = project(body, vec({3, 4}));
  EXPECT_NEAR(p(0), 0.6, 1e-15);
  EXPECT_NEAR(p(1), 0.8, 1e-15);
  EXPECT_NEAR(distance(body, vec({3, 4})), 4.0, 1e-15);
  EXPECT_NEAR(inflated_distance(ConvexBody::orthant(2), 1.0, vec({3, -7})), 2.0, 1e-15);
  EXPECT_EQ(distance(body, vec({0.5, 0.5})), 0.0);
}

TEST(Project, IntersectionHalfDisk) {
  const auto body = ConvexBody::intersection(
      {ConvexBody::ball(vec({0, 0}), 1.0), ConvexBody::half_space(vec({1, 0}), 0.0)}, vec({0, 0}));
  const Point p = project(body, vec({1, 1}));
  EXPECT_NEAR(p(0), 0.0, 1e-7);
  EXPECT_NEAR(p(1), 1.0, 1e-7);
  const Point q = project(body, vec({2, 0}));
  EXPECT_NEAR(q.norm(), 0.0, 1e-7);
  const Point r = project(body, vec({-3, 4}));
  EXPECT_NEAR(r(0), -0.6, 1e-7);
  EXPECT_NEAR(r(1), 0.8, 1e-7);
}

TEST(Project, DimensionMismatch) {
  EXPECT_THROW(project(ConvexBody::orthant(3), vec({1, 2})), DimensionMismatch);
}

TEST(Project, InvariantsOnRandomPoints) {
  std::vector<ConvexBody> bodies = {
      ConvexBody::orthant(4),
      ConvexBody::ball(vec({1, 0, -1, 2}), 1.5),
      ConvexBody::half_space(vec({0.5, 0.5, 0.5, 0.5}), -0.3),
      ConvexBody::inflated(ConvexBody::orthant(4), 0.7),
      ConvexBody::inflated(ConvexBody::ball(vec({0, 0, 0, 0}), 1.0), 0.5),
  };
  CounterRng rng({31, 0});
  for (const auto& body : bodies) {
    for (int i = 0; i < 500; ++i) {
      Point x(4), y(4);
      for (int j = 0; j < 4; ++j) x(j) = 3.0 * rng.normal(), y(j) = 3.0 * rng.normal();
      const Point px = project(body, x), py = project(body, y);
      ASSERT_LE(distance(body, px), 1e-9) << body.kind();
      ASSERT_LE((project(body, px) - px).norm(), 1e-9) << body.kind();
      ASSERT_LE((px - py).norm(), (x - y).norm() + 1e-9) << body.kind();
      ASSERT_NEAR(distance(body, x), (x - px).norm(), 1e-12) << body.kind();
    }
  }
}

TEST(Dykstra, SingleBodyMatchesClosedForm) {
  const auto ball = ConvexBody::ball(vec({0, 0, 0}), 2.0);
  const Point x = vec({3, -4, 12});
  EXPECT_TRUE(dykstra_project({ball}, x).isApprox(project(ball, x), 1e-9));
  EXPECT_THROW(dykstra_project({}, x), DomainError);
}

TEST(Dykstra, IterationLimit) {
  const auto a = ConvexBody::ball(vec({0, 0}), 1.0);
  const auto b = ConvexBody::ball(vec({1.5, 0}), 1.0);
  EXPECT_THROW(dykstra_project({a, b}, vec({0.75, 5}), 1e-15, 2), ConvergenceError);
}

TEST(WorstNullPoint, Defaults) {
  EXPECT_TRUE(worst_null_point(ConvexBody::orthant(3)).isApprox(Point::Zero(3)) ||
              worst_null_point(ConvexBody::orthant(3)).norm() == 0.0);
  const Point b = worst_null_point(ConvexBody::ball(vec({1, 2}), 3.0));
  EXPECT_NEAR(b(0), 4.0, 1e-15);
  EXPECT_NEAR(b(1), 2.0, 1e-15);
  const Point h = worst_null_point(ConvexBody::half_space(vec({0, 1}), 2.0));
  EXPECT_NEAR(h(1), 2.0, 1e-15);
  const auto inflated = ConvexBody::inflated(ConvexBody::orthant(2), 1.5);
  EXPECT_NEAR(distance(inflated, worst_null_point(inflated)), 0.0, 1e-12);
  EXPECT_NEAR(distance(ConvexBody::orthant(2), worst_null_point(inflated)), 1.5, 1e-12);
  EXPECT_THROW(worst_null_point(ConvexBody::intersection({ConvexBody::orthant(2)}, vec({0, 0}))), DomainError);
}
