#pragma once

// Closed convex null hypotheses with exact projection and distance oracles.
//
// Bodies are immutable values. Half-spaces, orthants and balls project in
// closed form; a Minkowski inflation B + B(0, R) projects through its base;
// intersections go through Dykstra's algorithm over their parts.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "seprate/model.hpp"

namespace seprate {

class ConvexBody;

/// {x : <normal, x> <= offset}, |normal| = 1.
struct HalfSpace {
  Point normal;
  double offset = 0.0;
};

/// (-inf, 0]^d.
struct Orthant {
  int d = 1;
};

/// Closed Euclidean ball.
struct Ball {
  Point center;
  double radius = 1.0;
};

/// base + B(0, R).
struct Inflated {
  std::shared_ptr<const ConvexBody> base;
  double R = 1.0;
};

/// Intersection of its parts; `witness` is a point of every part.
struct Intersection {
  std::shared_ptr<const std::vector<ConvexBody>> parts;
  Point witness;
};

struct DykstraOptions {
  double tol = 1e-9;
  long max_iter = 100000;
};

class ConvexBody {
 public:
  using Variant = std::variant<HalfSpace, Orthant, Ball, Inflated, Intersection>;

  static ConvexBody half_space(Point normal, double offset);
  /// R^{d-1} x (-inf, 0]: unit normal e_d, offset 0.
  static ConvexBody canonical_half_space(int d);
  static ConvexBody orthant(int d);
  static ConvexBody ball(Point center, double radius);
  static ConvexBody inflated(ConvexBody base, double R);
  /// Throws DomainError unless `witness` lies in every part (to 1e-9).
  static ConvexBody intersection(std::vector<ConvexBody> parts, Point witness);

  int dimension() const;
  const Variant& variant() const { return variant_; }
  /// "halfspace", "orthant", "ball", "inflated" or "intersection".
  std::string kind() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&variant_);
  }

 private:
  explicit ConvexBody(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// Euclidean projection of x onto the body.
Point project(const ConvexBody& body, const Point& x, const DykstraOptions& opts = {});

/// dist(x, body) = |x - project(body, x)|.
double distance(const ConvexBody& body, const Point& x, const DykstraOptions& opts = {});

/// dist(x, base + B(0, R)) = (dist(x, base) - R)_+.
double inflated_distance(const ConvexBody& base, double R, const Point& x);

/// Dykstra's algorithm for the projection onto the intersection of `bodies`.
/// Throws ConvergenceError when max_iter cycles pass without the iterate moving
/// less than tol.
Point dykstra_project(const std::vector<ConvexBody>& bodies, const Point& x,
                      double tol = 1e-9, long max_iter = 100000);

/// Canonical boundary point used as the default (least favourable) null mean.
/// Half-space: offset * normal; orthant: 0; ball: center + radius e_1;
/// inflated: the base's point pushed out by R along e_1 (orthant, ball) or the
/// normal (half-space). Throws DomainError for intersections.
Point worst_null_point(const ConvexBody& body);

}  // namespace seprate
