#include "seprate/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace seprate {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dimension(const ConvexBody& body, const Point& x, const char* what) {
  if (x.size() != body.dimension()) throw DimensionMismatch(what, body.dimension(), x.size());
}

Point project_ball(const Ball& ball, const Point& x) {
  const Point offset = x - ball.center;
  const double norm = offset.norm();
  if (norm <= ball.radius) return x;
  return ball.center + (ball.radius / norm) * offset;
}

Point project_half_space(const HalfSpace& hs, const Point& x) {
  const double excess = hs.normal.dot(x) - hs.offset;
  if (excess <= 0.0) return x;
  return x - excess * hs.normal;
}

}  // namespace

ConvexBody ConvexBody::half_space(Point normal, double offset) {
  require_valid_point(normal, "half-space normal");
  if (std::abs(normal.norm() - 1.0) > 1e-12) throw DomainError("half-space normal must have unit norm");
  if (!std::isfinite(offset)) throw DomainError("half-space offset must be finite");
  return ConvexBody(HalfSpace{std::move(normal), offset});
}

ConvexBody ConvexBody::canonical_half_space(int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  Point normal = Point::Zero(d);
  normal(d - 1) = 1.0;
  return half_space(std::move(normal), 0.0);
}

ConvexBody ConvexBody::orthant(int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  return ConvexBody(Orthant{d});
}

ConvexBody ConvexBody::ball(Point center, double radius) {
  require_valid_point(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball radius must be finite and > 0");
  return ConvexBody(Ball{std::move(center), radius});
}

ConvexBody ConvexBody::inflated(ConvexBody base, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("inflation radius R must be finite and > 0");
  return ConvexBody(Inflated{std::make_shared<const ConvexBody>(std::move(base)), R});
}

ConvexBody ConvexBody::intersection(std::vector<ConvexBody> parts, Point witness) {
  if (parts.empty()) throw DomainError("intersection needs at least one body");
  require_valid_point(witness, "intersection witness");
  for (const ConvexBody& part : parts) {
    if (part.dimension() != witness.size()) {
      throw DimensionMismatch("intersection part", witness.size(), part.dimension());
    }
    if (distance(part, witness) > 1e-9) throw DomainError("intersection witness lies outside a part");
  }
  return ConvexBody(Intersection{std::make_shared<const std::vector<ConvexBody>>(std::move(parts)),
                                 std::move(witness)});
}

int ConvexBody::dimension() const {
  return std::visit(Overloaded{
                        [](const HalfSpace& b) { return static_cast<int>(b.normal.size()); },
                        [](const Orthant& b) { return b.d; },
                        [](const Ball& b) { return static_cast<int>(b.center.size()); },
                        [](const Inflated& b) { return b.base->dimension(); },
                        [](const Intersection& b) { return static_cast<int>(b.witness.size()); },
                    },
                    variant_);
}

std::string ConvexBody::kind() const {
  return std::visit(Overloaded{
                        [](const HalfSpace&) { return std::string("halfspace"); },
                        [](const Orthant&) { return std::string("orthant"); },
                        [](const Ball&) { return std::string("ball"); },
                        [](const Inflated&) { return std::string("inflated"); },
                        [](const Intersection&) { return std::string("intersection"); },
                    },
                    variant_);
}

Point project(const ConvexBody& body, const Point& x, const DykstraOptions& opts) {
  require_dimension(body, x, "project");
  return std::visit(
      Overloaded{
          [&](const HalfSpace& hs) { return project_half_space(hs, x); },
          [&](const Orthant&) -> Point { return x.cwiseMin(0.0); },
          [&](const Ball& ball) { return project_ball(ball, x); },
          [&](const Inflated& inf) -> Point {
            const Point base_point = project(*inf.base, x, opts);
            const double dist = (x - base_point).norm();
            if (dist <= inf.R) return x;
            return base_point + (inf.R / dist) * (x - base_point);
          },
          [&](const Intersection& in) { return dykstra_project(*in.parts, x, opts.tol, opts.max_iter); },
      },
      body.variant());
}

double distance(const ConvexBody& body, const Point& x, const DykstraOptions& opts) {
  require_dimension(body, x, "distance");
  return std::visit(Overloaded{
                        [&](const HalfSpace& hs) { return std::max(hs.normal.dot(x) - hs.offset, 0.0); },
                        [&](const Orthant&) { return x.cwiseMax(0.0).norm(); },
                        [&](const Ball& ball) { return std::max((x - ball.center).norm() - ball.radius, 0.0); },
                        [&](const Inflated& inf) { return inflated_distance(*inf.base, inf.R, x); },
                        [&](const Intersection&) { return (x - project(body, x, opts)).norm(); },
                    },
                    body.variant());
}

double inflated_distance(const ConvexBody& base, double R, const Point& x) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("inflation radius R must be finite and > 0");
  return std::max(distance(base, x) - R, 0.0);
}

Point dykstra_project(const std::vector<ConvexBody>& bodies, const Point& x, double tol, long max_iter) {
  if (bodies.empty()) throw DomainError("dykstra_project needs at least one body");
  for (const ConvexBody& b : bodies) require_dimension(b, x, "dykstra_project");
  if (!(tol > 0.0)) throw DomainError("dykstra tolerance must be > 0");

  const std::size_t m = bodies.size();
  std::vector<Point> increments(m, Point::Zero(x.size()));
  Point current = x;
  for (long iter = 0; iter < max_iter; ++iter) {
    const Point cycle_start = current;
    for (std::size_t i = 0; i < m; ++i) {
      const Point shifted = current + increments[i];
      current = project(bodies[i], shifted);
      increments[i] = shifted - current;
    }
    if ((current - cycle_start).norm() < tol) {
      bool feasible = true;
      for (const ConvexBody& b : bodies) feasible = feasible && distance(b, current) <= tol;
      if (feasible) return current;
    }
  }
  throw ConvergenceError("dykstra_project: no convergence within " + std::to_string(max_iter) + " cycles");
}

Point worst_null_point(const ConvexBody& body) {
  return std::visit(
      Overloaded{
          [](const HalfSpace& hs) -> Point { return hs.offset * hs.normal; },
          [](const Orthant& o) -> Point { return Point::Zero(o.d); },
          [](const Ball& b) -> Point {
            Point p = b.center;
            p(0) += b.radius;
            return p;
          },
          [](const Inflated& inf) -> Point {
            if (const auto* hs = inf.base->as<HalfSpace>()) return (hs->offset + inf.R) * hs->normal;
            if (inf.base->as<Orthant>() == nullptr && inf.base->as<Ball>() == nullptr) {
              throw DomainError("worst_null_point: unsupported inflated base '" + inf.base->kind() + "'");
            }
            Point p = worst_null_point(*inf.base);
            p(0) += inf.R;
            return p;
          },
          [](const Intersection&) -> Point {
            throw DomainError("worst_null_point: intersections need an explicit null mean");
          },
      },
      body.variant());
}

}  // namespace seprate
