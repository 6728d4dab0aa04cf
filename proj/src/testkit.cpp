#include "seprate/testkit.hpp"

#include <cmath>

namespace seprate {

namespace {

void require_half_level(double x, const char* what) {
  if (!(x > 0.0 && x < 0.5)) throw DomainError(std::string(what) + " must lie in (0, 1/2)");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be finite and > 0");
}

TestOutcome decide(double statistic, double threshold) { return {statistic >= threshold, statistic, threshold}; }

double rounded_radius(const TestSpec& spec) {
  if (spec.rounded_R) return *spec.rounded_R;
  if (const auto* b = spec.body.as<Ball>()) return b->radius;
  if (const auto* i = spec.body.as<Inflated>()) return i->R;
  throw DomainError("rounded test needs a rounding radius R for body '" + spec.body.kind() + "'");
}

const Ball& require_ball(const TestSpec& spec) {
  const auto* b = spec.body.as<Ball>();
  if (b == nullptr) throw DomainError("ball test needs a ball body, got '" + spec.body.kind() + "'");
  return *b;
}

}  // namespace

Levels::Levels(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  require_half_level(alpha, "alpha");
  require_half_level(beta, "beta");
}

Levels Levels::split(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("eta must lie in (0, 1)");
  return Levels(eta / 2.0, eta / 2.0);
}

double Levels::delta() const { return std::min(alpha_, beta_); }

std::string to_string(TestKind kind) {
  switch (kind) {
    case TestKind::HalfSpace: return "halfspace";
    case TestKind::PlugIn: return "plugin";
    case TestKind::Rounded: return "rounded";
    case TestKind::Ball: return "ball";
  }
  return "unknown";
}

TestKind parse_test_kind(const std::string& name) {
  if (name == "halfspace") return TestKind::HalfSpace;
  if (name == "plugin") return TestKind::PlugIn;
  if (name == "rounded") return TestKind::Rounded;
  if (name == "ball") return TestKind::Ball;
  throw DomainError("unknown test kind '" + name + "' (expected halfspace, plugin, rounded or ball)");
}

double halfspace_threshold(double n, double delta) {
  require_positive(n, "n");
  return std::sqrt(2.0 * v(delta) / n);
}

double plugin_threshold_squared(int d, double n, double delta) {
  if (d < 1) throw DomainError("d must be >= 1");
  require_positive(n, "n");
  const double vd = v(delta);
  return d / n + (2.0 / n) * std::sqrt(d * vd) + (2.0 / n) * vd;
}

double rounded_threshold(int d, double n, double R, double alpha) {
  if (d < 1) throw DomainError("d must be >= 1");
  require_positive(n, "n");
  require_positive(R, "R");
  const double v4 = v(alpha / 4.0);
  const double v2 = v(alpha / 2.0);
  const double nR = n * R;
  return std::sqrt(2.0 * v4 / n) + d / (2.0 * nR) + (2.0 / nR) * std::sqrt(d * v2) + v2 / nR;
}

double ball_threshold(int d, double n, double R, double alpha) {
  if (d < 1) throw DomainError("d must be >= 1");
  require_positive(n, "n");
  require_positive(R, "R");
  const double va = v(alpha);
  return d / n + 2.0 * std::sqrt((d / (n * n) + 2.0 * R * R / n) * va) + 2.0 * va / n;
}

TestOutcome halfspace_test(const ModelParams& params, const Point& X, const Levels& levels) {
  if (X.size() != params.d()) throw DimensionMismatch("halfspace_test", params.d(), X.size());
  return decide(X(params.d() - 1), halfspace_threshold(params.n(), levels.delta()));
}

TestOutcome halfspace_test(const HalfSpace& hs, const ModelParams& params, const Point& X, const Levels& levels) {
  if (X.size() != hs.normal.size()) throw DimensionMismatch("halfspace_test", hs.normal.size(), X.size());
  return decide(hs.normal.dot(X) - hs.offset, halfspace_threshold(params.n(), levels.delta()));
}

TestOutcome plugin_test(const ConvexBody& body, const ModelParams& params, const Point& X, const Levels& levels) {
  const double tau = plugin_threshold_squared(body.dimension(), params.n(), levels.delta());
  return decide(distance(body, X), std::sqrt(tau));
}

TestOutcome rounded_test(const ConvexBody& body, double R, const ModelParams& params, const Point& X, double alpha) {
  require_half_level(alpha, "alpha");
  const double tau = rounded_threshold(body.dimension(), params.n(), R, alpha);
  return decide(distance(body, X), tau);
}

TestOutcome ball_test(const Point& center, double R, const ModelParams& params, const Point& X, double alpha) {
  require_half_level(alpha, "alpha");
  if (X.size() != center.size()) throw DimensionMismatch("ball_test", center.size(), X.size());
  const double tau = ball_threshold(static_cast<int>(X.size()), params.n(), R, alpha);
  return decide((X - center).squaredNorm() - R * R, tau);
}

bool ball_side_condition_holds(int d, double eta) { return d >= std::log(2.0 / eta); }

TestSpec::TestSpec(TestKind k, ConvexBody b, Levels l, std::optional<double> r)
    : kind(k), body(std::move(b)), levels(l), rounded_R(r) {
  if (rounded_R) require_positive(*rounded_R, "rounding radius R");
  if (kind == TestKind::HalfSpace && body.as<HalfSpace>() == nullptr) {
    throw DomainError("half-space test needs a half-space body, got '" + body.kind() + "'");
  }
  if (kind == TestKind::Ball) require_ball(*this);
  if (kind == TestKind::Rounded) rounded_radius(*this);
}

TestOutcome run_test(const TestSpec& spec, const ModelParams& params, const Point& X) {
  switch (spec.kind) {
    case TestKind::HalfSpace: return halfspace_test(*spec.body.as<HalfSpace>(), params, X, spec.levels);
    case TestKind::PlugIn: return plugin_test(spec.body, params, X, spec.levels);
    case TestKind::Rounded: return rounded_test(spec.body, rounded_radius(spec), params, X, spec.levels.alpha());
    case TestKind::Ball: {
      const Ball& b = require_ball(spec);
      return ball_test(b.center, b.radius, params, X, spec.levels.alpha());
    }
  }
  throw DomainError("unknown test kind");
}

double test_threshold(const TestSpec& spec, const ModelParams& params) {
  const int d = spec.body.dimension();
  switch (spec.kind) {
    case TestKind::HalfSpace: return halfspace_threshold(params.n(), spec.levels.delta());
    case TestKind::PlugIn: return std::sqrt(plugin_threshold_squared(d, params.n(), spec.levels.delta()));
    case TestKind::Rounded: return rounded_threshold(d, params.n(), rounded_radius(spec), spec.levels.alpha());
    case TestKind::Ball: return ball_threshold(d, params.n(), require_ball(spec).radius, spec.levels.alpha());
  }
  throw DomainError("unknown test kind");
}

Radius ball_upper_separation(int d, double n, double R, const Levels& levels) {
  if (d < 1) throw DomainError("d must be >= 1");
  require_positive(n, "n");
  require_positive(R, "R");
  const double sa = std::sqrt(v(levels.alpha()));
  const double sb = std::sqrt(v(levels.beta()));
  const double floor_term = std::sqrt(2.0 / n) * (sa + 2.0 * sb);
  const double detection = std::sqrt(2.0) * std::pow(d, 0.25) / std::sqrt(n) * (sa + sb) + floor_term;
  const double curved = std::sqrt(static_cast<double>(d)) / (n * R + 2.0 * std::sqrt(n) * sa) * (sa + sb) + floor_term;
  if (detection <= curved) return {detection, "d^(1/4)/sqrt(n)"};
  return {curved, "sqrt(d)/(nR)"};
}

Radius guaranteed_separation(const TestSpec& spec, const ModelParams& params) {
  const int d = spec.body.dimension();
  const double n = params.n();
  switch (spec.kind) {
    case TestKind::HalfSpace: return {2.0 * halfspace_threshold(n, spec.levels.delta()), "halfspace"};
    case TestKind::PlugIn: return {2.0 * std::sqrt(plugin_threshold_squared(d, n, spec.levels.delta())), "plugin"};
    case TestKind::Rounded:
      return {rounded_threshold(d, n, rounded_radius(spec), spec.levels.alpha()) +
                  std::sqrt(2.0 * v(spec.levels.beta()) / n),
              "rounded"};
    case TestKind::Ball: return ball_upper_separation(d, n, require_ball(spec).radius, spec.levels);
  }
  throw DomainError("unknown test kind");
}

}  // namespace seprate
