#include "seprate/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace seprate {

namespace {

void require_level(double delta, const char* what) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError(std::string(what) + " must lie in (0, 1), got " + std::to_string(delta));
  }
}

void require_chisq_args(int d, double lambda, double delta) {
  if (d < 1) throw DomainError("chi-square degrees of freedom must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("noncentrality must be finite and >= 0");
  }
  require_level(delta, "delta");
}

}  // namespace

void require_valid_point(const Point& p, const char* what) {
  if (p.size() < 1) throw DomainError(std::string(what) + " must have dimension >= 1");
  if (!p.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

ModelParams::ModelParams(int d, double n) : d_(d), n_(n) {
  if (d < 1) throw DomainError("dimension d must be >= 1");
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("variance scaling n must be finite and > 0");
}

double ModelParams::sigma() const { return 1.0 / std::sqrt(n_); }

Point sample(const ModelParams& params, const Point& mu, Seed seed) {
  if (mu.size() != params.d()) throw DimensionMismatch("sample: mean", params.d(), mu.size());
  Point x(params.d());
  CounterRng rng(seed);
  rng.fill_normal({x.data(), static_cast<std::size_t>(x.size())});
  return mu + params.sigma() * x;
}

double v(double x) {
  require_level(x, "v(x): x");
  return -std::log(x);
}

double gaussian_tail_threshold(double sigma, double delta) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be finite and > 0");
  require_level(delta, "delta");
  return sigma * std::sqrt(2.0 * v(delta));
}

double chisq_upper_threshold(int d, double lambda, double delta) {
  require_chisq_args(d, lambda, delta);
  const double vd = v(delta);
  return d + lambda + 2.0 * std::sqrt((d + 2.0 * lambda) * vd) + 2.0 * vd;
}

double chisq_lower_threshold(int d, double lambda, double delta) {
  require_chisq_args(d, lambda, delta);
  return d + lambda - 2.0 * std::sqrt((d + 2.0 * lambda) * v(delta));
}

SqrtGap sqrt_gap_bounds(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("sqrt_gap_bounds: a must be finite and > 0");
  if (!std::isfinite(b)) throw DomainError("sqrt_gap_bounds: b must be finite");
  const double root = std::sqrt(a + b * b);
  // root - b loses everything to cancellation when b >> a; a / (root + b) is the same number.
  const double value = b > 0.0 ? a / (root + b) : root - b;
  const double upper = b > 0.0 ? a / (2.0 * b) : std::numeric_limits<double>::infinity();
  return {a / (2.0 * root), value, upper};
}

SqrtGap sqrt_gap_bounds_shrink(double a, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("sqrt_gap_bounds_shrink: b must be finite and > 0");
  if (!(a <= b * b) || !std::isfinite(a)) throw DomainError("sqrt_gap_bounds_shrink: requires a <= b^2");
  const double root = std::sqrt(b * b - a);
  const double value = a > 0.0 ? a / (b + root) : b - root;
  return {a / (2.0 * b), value, std::numeric_limits<double>::infinity()};
}

double sample_noncentral_chisq(int d, double lambda, Seed seed) {
  require_chisq_args(d, lambda, 0.5);
  CounterRng rng(seed);
  const double shifted = rng.normal() + std::sqrt(lambda);
  double total = shifted * shifted;
  for (int i = 1; i < d; ++i) {
    const double z = rng.normal();
    total += z * z;
  }
  return total;
}

}  // namespace seprate
