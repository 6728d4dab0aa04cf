#pragma once

// Gaussian sequence model X = mu + eps / sqrt(n), the v_x = ln(1/x) shorthand,
// the Gaussian / chi-square concentration thresholds and the square-root gap
// inequalities that every test and bound in the library is built from.

#include <Eigen/Core>

#include "seprate/errors.hpp"
#include "seprate/rng.hpp"

namespace seprate {

/// A point of R^d: a mean, an observation, a projection.
using Point = Eigen::VectorXd;

/// Throws DomainError unless `p` is non-empty with finite entries.
void require_valid_point(const Point& p, const char* what = "point");

/// Dimension d and variance scaling n of the sequence model (noise variance 1/n).
class ModelParams {
 public:
  ModelParams(int d, double n);

  int d() const { return d_; }
  double n() const { return n_; }
  double sigma() const;
  double variance() const { return 1.0 / n_; }

 private:
  int d_;
  double n_;
};

/// Draws X = mu + eps / sqrt(n) with eps ~ N(0, I_d) taken from `seed`'s stream.
Point sample(const ModelParams& params, const Point& mu, Seed seed);

/// ln(1/x) for x in (0, 1).
double v(double x);

/// sigma * sqrt(2 v_delta): P(N(0, sigma^2) >= t) <= delta.
double gaussian_tail_threshold(double sigma, double delta);

/// d + lambda + 2 sqrt((d + 2 lambda) v_delta) + 2 v_delta for chi^2_lambda(d).
double chisq_upper_threshold(int d, double lambda, double delta);

/// d + lambda - 2 sqrt((d + 2 lambda) v_delta). Not clamped: a negative value
/// is a vacuous (but valid) lower tail bound.
double chisq_lower_threshold(int d, double lambda, double delta);

struct SqrtGap {
  double lower;
  double value;
  double upper;
};

/// a / (2 sqrt(a + b^2)) <= sqrt(a + b^2) - b <= a / (2b); upper is +inf for b <= 0.
SqrtGap sqrt_gap_bounds(double a, double b);

/// Second form: b - sqrt(b^2 - a) >= a / (2b) for b > 0, a <= b^2.
/// Returns (lower = a/(2b), value = b - sqrt(b^2 - a)); `upper` is +inf.
SqrtGap sqrt_gap_bounds_shrink(double a, double b);

/// Draw of a noncentral chi^2_lambda(d): squared norm of N(m, I_d) with |m|^2 = lambda,
/// the mean placed on the first coordinate.
double sample_noncentral_chisq(int d, double lambda, Seed seed);

}  // namespace seprate
