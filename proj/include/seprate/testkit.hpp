#pragma once

// The four separation tests (half-space, plug-in distance, R-rounded distance,
// ball norm) with their exact rejection thresholds, and the separation radii
// at which each test's type-II error is guaranteed to be at most beta.

#include <optional>
#include <string>

#include "seprate/geometry.hpp"
#include "seprate/model.hpp"

namespace seprate {

struct TestOutcome {
  bool reject = false;
  double statistic = 0.0;
  double threshold = 0.0;
};

/// Separate type-I / type-II levels, each in (0, 1/2).
class Levels {
 public:
  Levels(double alpha, double beta);
  /// alpha = beta = eta / 2.
  static Levels split(double eta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double eta() const { return alpha_ + beta_; }
  double delta() const;  ///< min(alpha, beta)

 private:
  double alpha_;
  double beta_;
};

enum class TestKind { HalfSpace, PlugIn, Rounded, Ball };

std::string to_string(TestKind kind);
/// Accepts "halfspace", "plugin", "rounded", "ball".
TestKind parse_test_kind(const std::string& name);

// Thresholds ---------------------------------------------------------------

/// tau_delta = sqrt(2 v_delta / n).
double halfspace_threshold(double n, double delta);
/// tau_delta = d/n + (2/n) sqrt(d v_delta) + (2/n) v_delta; the test compares dist to sqrt(tau_delta).
double plugin_threshold_squared(int d, double n, double delta);
/// sqrt(2 v_{a/4} / n) + d/(2nR) + (2/(nR)) sqrt(d v_{a/2}) + v_{a/2} / (nR).
double rounded_threshold(int d, double n, double R, double alpha);
/// d/n + 2 sqrt((d/n^2 + 2R^2/n) v_a) + 2 v_a / n.
double ball_threshold(int d, double n, double R, double alpha);

// Tests ----------------------------------------------------------------------

/// Canonical half-space R^{d-1} x (-inf, 0]: rejects when X_d >= tau_delta.
TestOutcome halfspace_test(const ModelParams& params, const Point& X, const Levels& levels);
/// General half-space {<a, x> <= c}: statistic <a, X> - c, same threshold.
TestOutcome halfspace_test(const HalfSpace& hs, const ModelParams& params, const Point& X, const Levels& levels);
/// Rejects when dist(X, C) >= sqrt(tau_delta).
TestOutcome plugin_test(const ConvexBody& body, const ModelParams& params, const Point& X, const Levels& levels);
/// Rejects when dist(X, C) >= tau for a body the caller asserts to be R-rounded.
/// TestSpec defaults R to the radius of a ball or the inflation of an inflated body.
TestOutcome rounded_test(const ConvexBody& body, double R, const ModelParams& params, const Point& X, double alpha);
/// Rejects when |X - z|^2 - R^2 >= tau.
TestOutcome ball_test(const Point& center, double R, const ModelParams& params, const Point& X, double alpha);

/// True when d >= ln(2/eta); the ball test's uniform type-II argument needs it.
bool ball_side_condition_holds(int d, double eta);

/// A fully specified test: kind + null body + levels (+ the rounding radius).
struct TestSpec {
  TestKind kind = TestKind::PlugIn;
  ConvexBody body;
  Levels levels;
  std::optional<double> rounded_R;  ///< rounded test only; defaults to a ball's radius

  TestSpec(TestKind k, ConvexBody b, Levels l, std::optional<double> r = std::nullopt);
};

TestOutcome run_test(const TestSpec& spec, const ModelParams& params, const Point& X);
/// Rejection threshold of `spec` at `params` (statistic-free).
double test_threshold(const TestSpec& spec, const ModelParams& params);

/// A radius together with the branch of a min(...) expression that produced it.
struct Radius {
  double rho = 0.0;
  std::string branch;
};

/// The separation at which the matching upper-bound argument guarantees
/// type-II <= beta: half-space 2 tau_delta; plug-in 2 sqrt(tau_delta);
/// rounded tau + sqrt(2 v_beta / n); ball the smaller of the d^{1/4} and
/// sqrt(d)/(nR) expressions.
Radius guaranteed_separation(const TestSpec& spec, const ModelParams& params);

/// Ball upper-bound expressions with general (alpha, beta).
Radius ball_upper_separation(int d, double n, double R, const Levels& levels);

}  // namespace seprate
