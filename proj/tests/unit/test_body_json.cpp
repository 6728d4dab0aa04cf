#include <gtest/gtest.h>

#include "seprate/body_json.hpp"

using namespace seprate;
using nlohmann::json;

TEST(BodyJson, ParsesEachVariant) {
  EXPECT_EQ(body_from_json(json::parse(R"({"variant":"orthant","d":3})")).dimension(), 3);
  const auto hs = body_from_json(json::parse(R"({"variant":"halfspace","d":4})"));
  ASSERT_NE(hs.as<HalfSpace>(), nullptr);
  EXPECT_EQ(hs.as<HalfSpace>()->normal(3), 1.0);
  const auto ball = body_from_json(json::parse(R"({"variant":"ball","d":10,"radius":2})"));
  ASSERT_NE(ball.as<Ball>(), nullptr);
  EXPECT_EQ(ball.as<Ball>()->radius, 2.0);
  EXPECT_EQ(ball.as<Ball>()->center.norm(), 0.0);
  const auto inflated = body_from_json(
      json::parse(R"({"variant":"inflated","base":{"variant":"orthant","d":2},"R":0.5})"));
  ASSERT_NE(inflated.as<Inflated>(), nullptr);
  EXPECT_EQ(inflated.as<Inflated>()->R, 0.5);
  const auto inter = body_from_json(json::parse(
      R"({"variant":"intersection","bodies":[{"variant":"orthant","d":2},{"variant":"ball","center":[0,0],"radius":1}],"witness":[0,0]})"));
  EXPECT_EQ(inter.kind(), "intersection");
}

TEST(BodyJson, RoundTrips) {
  const std::vector<ConvexBody> bodies = {
      ConvexBody::orthant(2),
      ConvexBody::half_space(Point::Unit(3, 1), 0.25),
      ConvexBody::ball(Point::Constant(2, 0.5), 1.5),
      ConvexBody::inflated(ConvexBody::ball(Point::Zero(2), 1.0), 2.0),
  };
  for (const auto& b : bodies) {
    const json j = body_to_json(b);
    EXPECT_EQ(body_to_json(body_from_json(j)), j);
  }
}

TEST(BodyJson, RejectsMalformed) {
  EXPECT_THROW(body_from_json(json::parse(R"([1,2])")), DomainError);
  EXPECT_THROW(body_from_json(json::parse(R"({"variant":"cube","d":2})")), DomainError);
  EXPECT_THROW(body_from_json(json::parse(R"({"variant":"orthant"})")), DomainError);
  EXPECT_THROW(body_from_json(json::parse(R"({"variant":"orthant","d":-1})")), DomainError);
  EXPECT_THROW(body_from_json(json::parse(R"({"variant":"ball","center":[],"radius":1})")), DomainError);
  EXPECT_THROW(body_from_json(json::parse(R"({"variant":"halfspace","normal":[1,1],"offset":0})")), DomainError);
  EXPECT_THROW(point_from_json(json::parse(R"([1,"a"])")), DomainError);
}

TEST(PointJson, RoundTrips) {
  Point p(3);
  p << 0.1, -2.5, 1e-300;
  EXPECT_EQ(point_from_json(point_to_json(p)), p);
}
