#include "seprate/ratelab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "seprate/errors.hpp"
#include "seprate/lowerbounds.hpp"
#include "seprate/parallel.hpp"

namespace seprate {

namespace {

constexpr std::uint64_t kNullTag = 21;
constexpr std::uint64_t kAltTag = 22;

Point unit(int d, int axis) {
  Point e = Point::Zero(d);
  e(axis) = 1.0;
  return e;
}

long count_rejections(const TestSpec& spec, const Point& mu, const ModelParams& params, long reps,
                      std::uint64_t master) {
  return parallel_reduce(reps, 0L, [&](long begin, long end) {
    long rejections = 0;
    for (long i = begin; i < end; ++i) {
      const Point x = sample(params, mu, {master, static_cast<std::uint64_t>(i)});
      if (run_test(spec, params, x).reject) ++rejections;
    }
    return rejections;
  });
}

void require_reps(long reps) {
  if (reps < 1) throw DomainError("reps must be >= 1");
}

}  // namespace

Scenario make_scenario(const ConvexBody& body, const ModelParams& params) {
  const int d = body.dimension();
  if (d != params.d()) throw DimensionMismatch("make_scenario: body", params.d(), d);
  Scenario s;
  if (const auto* hs = body.as<HalfSpace>()) {
    s.null_mu = hs->offset * hs->normal;
    s.alt_base = s.null_mu;
    s.direction = hs->normal;
    s.description = "null on the hyperplane, alternative along the normal";
  } else if (body.as<Orthant>()) {
    // The face point sits far enough from the corner that the other
    // coordinates never leave the orthant under the noise.
    const double L = 1e3 * (1.0 + std::sqrt(d / params.n()));
    s.null_mu = Point::Zero(d);
    s.alt_base = Point::Constant(d, -L);
    s.alt_base(0) = 0.0;
    s.direction = unit(d, 0);
    s.description = "null at the corner, alternative off the face x_1 = 0 far from the corner";
  } else if (const auto* ball = body.as<Ball>()) {
    s.direction = unit(d, 0);
    s.null_mu = ball->center + ball->radius * s.direction;
    s.alt_base = s.null_mu;
    s.description = "null at center + r e_1, alternative radially outward";
  } else if (const auto* inf = body.as<Inflated>()) {
    s = make_scenario(*inf->base, params);
    s.null_mu += inf->R * s.direction;
    s.alt_base += inf->R * s.direction;
    s.description = "inflated: " + s.description + ", pushed out by R";
  } else {
    throw DomainError("make_scenario: intersection bodies need explicit null and alternative points");
  }
  return s;
}

double binomial_ci_radius(double p, long reps) {
  require_reps(reps);
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

ErrorEstimate estimate_errors(const TestSpec& spec, const Point& null_mu, const Point& alt_mu,
                              const ModelParams& params, long reps, std::uint64_t master_seed) {
  require_reps(reps);
  const int d = spec.body.dimension();
  if (null_mu.size() != d) throw DimensionMismatch("estimate_errors: null mean", d, null_mu.size());
  if (alt_mu.size() != d) throw DimensionMismatch("estimate_errors: alternative mean", d, alt_mu.size());
  if (distance(spec.body, null_mu) > 1e-9) throw DomainError("estimate_errors: null mean lies outside the body");
  if (!(distance(spec.body, alt_mu) > 0.0)) throw DomainError("estimate_errors: alternative mean lies in the body");

  ErrorEstimate e;
  e.reps = reps;
  e.alpha_hat = static_cast<double>(count_rejections(spec, null_mu, params, reps, derive_master(master_seed, kNullTag))) / reps;
  e.beta_hat = 1.0 - static_cast<double>(count_rejections(spec, alt_mu, params, reps, derive_master(master_seed, kAltTag))) / reps;
  e.ci_radius = std::max(binomial_ci_radius(e.alpha_hat, reps), binomial_ci_radius(e.beta_hat, reps));
  return e;
}

SeparationResult empirical_separation(const TestSpec& spec, const ModelParams& params, long reps,
                                      std::uint64_t master_seed, const BisectionOptions& opts) {
  require_reps(reps);
  if (!(opts.bisect_tol > 0.0 && opts.bisect_tol < 1.0)) throw DomainError("bisect_tol must lie in (0, 1)");
  if (!(opts.rho_lo >= 0.0)) throw DomainError("rho_lo must be >= 0");

  const Scenario sc = make_scenario(spec.body, params);
  const double eta = spec.levels.eta();
  const std::uint64_t alt_master = derive_master(master_seed, kAltTag);

  SeparationResult res;
  res.reps = reps;
  res.alpha_hat =
      static_cast<double>(count_rejections(spec, sc.null_mu, params, reps, derive_master(master_seed, kNullTag))) / reps;
  auto beta_at = [&](double rho) {
    return 1.0 - static_cast<double>(count_rejections(spec, sc.alternative(rho), params, reps, alt_master)) / reps;
  };

  double lo = opts.rho_lo;
  double hi = opts.rho_hi.value_or(guaranteed_separation(spec, params).rho);
  if (!(hi > lo)) throw DomainError("empirical_separation: rho_hi must exceed rho_lo");
  double beta_lo = beta_at(lo);
  if (res.alpha_hat + beta_lo < eta) {
    throw DomainError("empirical_separation: invalid bracket, total error at rho_lo is already below eta");
  }
  double beta_hi = beta_at(hi);
  for (int k = 0; res.alpha_hat + beta_hi >= eta; ++k) {
    if (k >= opts.max_expansions) throw DomainError("empirical_separation: no rho_hi with total error below eta");
    lo = hi;
    beta_lo = beta_hi;
    hi *= 2.0;
    beta_hi = beta_at(hi);
    res.warnings.push_back("rho_hi expanded to " + format_double(hi));
  }

  const double width = opts.bisect_tol * hi;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const double beta_mid = beta_at(mid);
    const double slack = binomial_ci_radius(beta_mid, reps);
    if (beta_mid > beta_lo + slack || beta_mid < beta_hi - slack) {
      res.warnings.push_back("non-monotone type-II estimate at rho = " + format_double(mid));
    }
    ++res.steps;
    if (res.alpha_hat + beta_mid < eta) {
      hi = mid;
      beta_hi = beta_mid;
    } else {
      lo = mid;
      beta_lo = beta_mid;
    }
  }
  res.rho_lo = lo;
  res.rho_hi = hi;
  res.rho_hat = 0.5 * (lo + hi);
  res.beta_hat = beta_at(res.rho_hat);
  return res;
}

bool family_uses_R(const std::string& family) { return family == "ball" || family == "inflated-orthant"; }

ConvexBody family_body(const std::string& family, int d, std::optional<double> R) {
  if (family_uses_R(family) && !R) throw DomainError("body family '" + family + "' needs R");
  if (family == "halfspace") return ConvexBody::canonical_half_space(d);
  if (family == "orthant") return ConvexBody::orthant(d);
  if (family == "ball") return ConvexBody::ball(Point::Zero(d), *R);
  if (family == "inflated-orthant") return ConvexBody::inflated(ConvexBody::orthant(d), *R);
  throw DomainError("unknown body family '" + family + "' (halfspace, orthant, ball, inflated-orthant)");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::D: return "d";
    case SweepAxis::N: return "n";
    case SweepAxis::R: return "R";
  }
  return "?";
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "d") return SweepAxis::D;
  if (name == "n") return SweepAxis::N;
  if (name == "R") return SweepAxis::R;
  throw DomainError("unknown sweep axis '" + name + "' (d, n, R)");
}

namespace {

std::optional<double> lower_radius(const std::string& family, TestKind test, int d, double n,
                                   std::optional<double> R, double eta) {
  if (family == "halfspace") return two_point_separation(n, eta);
  if (family == "ball" && test == TestKind::Ball && d >= 3) return ball_lower_separation(n, d, *R, eta);
  if (eta < 8.0 / 9.0) {
    if (family == "orthant" && d >= 42) return orthant_prior_parameters(d, eta, n).rho_rounded;
    if (family == "inflated-orthant" && d >= 43) return inflated_orthant_rho(d, n, *R, eta).rho;
  }
  return std::nullopt;
}

}  // namespace

std::vector<SweepRow> rate_sweep(const SweepConfig& config) {
  if (config.values.size() < 4) throw DomainError("rate_sweep: need at least 4 values");
  for (std::size_t i = 0; i < config.values.size(); ++i) {
    const double value = config.values[i];
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("rate_sweep: values must be finite and > 0");
    if (i > 0 && !(value > config.values[i - 1])) throw DomainError("rate_sweep: values must be strictly increasing");
    if (config.axis == SweepAxis::D && value != std::floor(value)) throw DomainError("rate_sweep: d values must be integers");
  }
  if (config.axis == SweepAxis::R && !family_uses_R(config.family)) {
    throw DomainError("rate_sweep: body family '" + config.family + "' has no R to sweep");
  }
  const Levels levels = Levels::split(config.eta);

  std::vector<SweepRow> rows;
  rows.reserve(config.values.size());
  for (double value : config.values) {
    int d = config.d;
    double n = config.n;
    std::optional<double> R = config.R;
    switch (config.axis) {
      case SweepAxis::D: d = static_cast<int>(value); break;
      case SweepAxis::N: n = value; break;
      case SweepAxis::R: R = value; break;
    }
    if (!family_uses_R(config.family)) R.reset();
    const ModelParams params(d, n);
    const TestSpec spec(config.test, family_body(config.family, d, R), levels);
    BisectionOptions opts;
    opts.bisect_tol = config.bisect_tol;
    const SeparationResult sep = empirical_separation(spec, params, config.reps, config.seed, opts);

    SweepRow row;
    row.body = config.family;
    row.d = d;
    row.n = n;
    row.R = R;
    row.eta = config.eta;
    row.rho_hat = sep.rho_hat;
    row.alpha_hat = sep.alpha_hat;
    row.beta_hat = sep.beta_hat;
    row.reps = config.reps;
    row.seed = config.seed;
    row.upper_bound = guaranteed_separation(spec, params).rho;
    row.lower_bound = lower_radius(config.family, config.test, d, n, R, config.eta);
    row.warnings = sep.warnings;
    if (config.test == TestKind::Ball && !ball_side_condition_holds(d, config.eta)) {
      row.warnings.push_back("ball test side condition d >= ln(2/eta) fails");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RateFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("fit_loglog: x and y differ in length");
  if (x.size() < 4) throw DomainError("fit_loglog: need at least 4 points");
  RateFit fit;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("fit_loglog: values must be > 0");
    fit.points.emplace_back(std::log(x[i]), std::log(y[i]));
  }
  const double m = static_cast<double>(fit.points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [lx, ly] : fit.points) {
    mx += lx;
    my += ly;
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [lx, ly] : fit.points) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
    syy += (ly - my) * (ly - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_loglog: degenerate x values");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [lx, ly] : fit.points) {
    const double r = ly - (fit.intercept + fit.slope * lx);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

RateFit fit_loglog(const std::vector<SweepRow>& rows, SweepAxis axis) {
  std::vector<double> x, y;
  for (const SweepRow& row : rows) {
    switch (axis) {
      case SweepAxis::D: x.push_back(row.d); break;
      case SweepAxis::N: x.push_back(row.n); break;
      case SweepAxis::R:
        if (!row.R) throw DomainError("fit_loglog: row has no R");
        x.push_back(*row.R);
        break;
    }
    y.push_back(row.rho_hat);
  }
  return fit_loglog(x, y);
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.body << ',' << r.d << ',' << format_double(r.n) << ',' << (r.R ? format_double(*r.R) : "") << ','
        << format_double(r.eta) << ',' << format_double(r.rho_hat) << ',' << format_double(r.alpha_hat) << ','
        << format_double(r.beta_hat) << ',' << r.reps << ',' << r.seed << '\n';
  }
}

}  // namespace seprate
