#include "seprate/lowerbounds.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seprate/errors.hpp"
#include "seprate/parallel.hpp"

namespace seprate {

namespace {

constexpr double kE = std::numbers::e;
constexpr int kQuadDepth = 20;

void require_n(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("n must be finite and > 0");
}

void require_eta(double eta, double upper = 1.0) {
  if (!(eta > 0.0 && eta < upper)) {
    throw DomainError("eta must lie in (0, " + std::to_string(upper) + "), got " + std::to_string(eta));
  }
}

double chi2_criterion(double eta) { return std::log1p(4.0 * (1.0 - eta) * (1.0 - eta)); }

template <class F>
long double integrate(F f, long double a, long double b, long double* error) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<long double, 61>::integrate(f, a, b, kQuadDepth, 1e-15L, error);
}

// Adaptive bisection on non-adaptive 61-point Gauss-Kronrod panels with an
// absolute error target; relative targets never terminate on integrands that
// are pure rounding noise.
template <class F>
double integrate_absolute(const F& f, double a, double b, double abs_tol, int depth, double* error) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &err);
  if (err <= abs_tol || depth >= kQuadDepth) {
    *error += err;
    return value;
  }
  const double mid = 0.5 * (a + b);
  return integrate_absolute(f, a, mid, 0.5 * abs_tol, depth + 1, error) +
         integrate_absolute(f, mid, b, 0.5 * abs_tol, depth + 1, error);
}

DivergenceReport make_report(double formula, long double numeric, const char* method) {
  DivergenceReport r;
  r.formula_value = formula;
  r.numeric_value = static_cast<double>(numeric);
  r.abs_gap = std::abs(r.formula_value - r.numeric_value);
  r.method = method;
  return r;
}

double mixture_density(const DiscretePrior& prior, double x, double sigma) {
  constexpr double kInvSqrt2Pi = 0.3989422804014327;
  double acc = 0.0;
  for (const Atom& a : prior.atoms()) {
    const double z = (x - a.location) / sigma;
    acc += a.weight * std::exp(-0.5 * z * z);
  }
  return acc * kInvSqrt2Pi / sigma;
}

struct Counts {
  long rejections_null = 0;
  long acceptances_alt = 0;
  Counts& operator+=(const Counts& o) {
    rejections_null += o.rejections_null;
    acceptances_alt += o.acceptances_alt;
    return *this;
  }
};

}  // namespace

double two_point_separation(double n, double eta) {
  require_n(n);
  require_eta(eta);
  return std::sqrt(chi2_criterion(eta) / n);
}

double chi2_two_point(double n, double rho) {
  require_n(n);
  if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
  return std::exp(n * rho * rho);
}

DivergenceReport chi2_two_point_report(double n, double rho) {
  const double formula = chi2_two_point(n, rho);
  // int phi(x; rho, s)^2 / phi(x; 0, s) dx with s^2 = 1/n.
  const long double nn = n;
  const long double r = rho;
  const long double s = 1.0L / std::sqrt(nn);
  auto integrand = [&](long double x) {
    const long double log_value = -nn * (x - r) * (x - r) + 0.5L * nn * x * x;
    return std::exp(log_value) / (s * std::sqrt(2.0L * std::numbers::pi_v<long double>));
  };
  long double error = 0.0L;
  const long double centre = 2.0L * r;
  const long double value = integrate(integrand, centre - 40.0L * s, centre + 40.0L * s, &error);
  return make_report(formula, value, "gauss-kronrod-61 on [2rho - 40 sigma, 2rho + 40 sigma]");
}

double ball_prior_divergence(double n, int d, double h) {
  require_n(n);
  if (d < 2) throw DomainError("ball_prior_divergence: d must be >= 2");
  if (!(h >= 0.0)) throw DomainError("ball_prior_divergence: h must be >= 0");
  return std::pow(std::cosh(n * h * h), d - 1);
}

DivergenceReport ball_prior_divergence_report(double n, int d, double h) {
  const double formula = ball_prior_divergence(n, d, h);
  const long double nn = n;
  const long double hh = h;
  const long double s = 1.0L / std::sqrt(nn);
  auto integrand = [&](long double x) {
    const long double c = std::cosh(nn * hh * x);
    return c * c * std::exp(-0.5L * nn * x * x) * std::sqrt(nn / (2.0L * std::numbers::pi_v<long double>));
  };
  long double error = 0.0L;
  const long double reach = 2.0L * hh + 40.0L * s;
  const long double one_d = integrate(integrand, -reach, reach, &error) * std::exp(-nn * hh * hh);
  return make_report(formula, std::pow(one_d, d - 1), "gauss-kronrod-61 of E[cosh^2(n h Y)] e^{-n h^2}, ^(d-1)");
}

double ball_h_from_rho(int d, double R, double rho) {
  if (d < 2) throw DomainError("ball_h_from_rho: d must be >= 2");
  if (!(R > 0.0) || !(rho >= 0.0)) throw DomainError("ball_h_from_rho: need R > 0 and rho >= 0");
  return std::sqrt(((R + rho) * (R + rho) - R * R) / (d - 1));
}

double ball_rho_from_h(int d, double R, double h) {
  if (d < 2) throw DomainError("ball_rho_from_h: d must be >= 2");
  if (!(R > 0.0) || !(h >= 0.0)) throw DomainError("ball_rho_from_h: need R > 0 and h >= 0");
  return std::sqrt(R * R + (d - 1) * h * h) - R;
}

double cosh_taylor_bound(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("cosh_taylor_bound: x must lie in [0, 1]");
  return 1.0 + 0.5 * kE * x * x;
}

double ball_lower_separation(double n, int d, double R, double eta) {
  require_n(n);
  require_eta(eta);
  if (d < 3) throw DomainError("ball_lower_separation: needs d >= 3, got " + std::to_string(d));
  if (!(R > 0.0)) throw DomainError("ball_lower_separation: R must be > 0");
  const double s = std::sqrt(d - 1.0) / n * std::sqrt(2.0 / kE * chi2_criterion(eta));
  return s / (2.0 * std::sqrt(s + R * R));
}

int prior_order(int d, double eta) {
  if (d < 2) throw DomainError("prior_order: d must be >= 2");
  require_eta(eta, 8.0 / 9.0);
  const double k = 2.0 / (1.0 - std::numbers::ln2);
  const double raw = k * std::log(static_cast<double>(d)) + 1.0 + k * std::log(1.8 / (8.0 / 9.0 - eta));
  return std::max(32, static_cast<int>(std::ceil(raw)));
}

PriorParameters orthant_prior_parameters(int d, double eta, double n, bool shifted) {
  const int min_d = shifted ? 43 : 42;
  if (d < min_d) throw DomainError("orthant_prior_parameters: d must be >= " + std::to_string(min_d));
  require_n(n);
  const int k = shifted ? d - 1 : d;
  PriorParameters p;
  p.d = d;
  p.shifted = shifted;
  p.M = prior_order(k, eta);
  p.c = 2.0 * std::sqrt(2.0) / (std::sqrt(17.0) * kE);
  p.sigma = 1.0 / std::sqrt(n);
  p.b = p.c * std::sqrt(static_cast<double>(p.M)) * p.sigma;
  p.u = p.b / (4.0 * p.M * p.M);
  p.rho = std::sqrt(k / 3.0) * p.u;
  p.rho_rounded = std::sqrt(static_cast<double>(k)) / (28.0 * std::pow(p.M, 1.5) * std::sqrt(n));
  return p;
}

double tv_bound_product(int M, int d) {
  if (M < 32) throw DomainError("tv_bound_product: M must be >= 32");
  if (d < 1) throw DomainError("tv_bound_product: d must be >= 1");
  const double head = 1.0 + 1.0 / (2.0 * std::sqrt(std::numbers::pi));
  return d * head * (2.0 / (kE - 2.0)) * std::pow(2.0 / kE, M / 2);
}

double tv_distance_1d(const DiscretePrior& nu0, const DiscretePrior& nu1, double sigma, double* error_estimate) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("tv_distance_1d: sigma must be > 0");
  const double lo = std::min(nu0.min_location(), nu1.min_location()) - 10.0 * sigma;
  const double hi = std::max(nu0.max_location(), nu1.max_location()) + 10.0 * sigma;
  auto integrand = [&](double x) {
    return std::abs(mixture_density(nu1, x, sigma) - mixture_density(nu0, x, sigma));
  };
  double error = 0.0;
  const double value = integrate_absolute(integrand, lo, hi, 1e-12, 0, &error);
  if (error_estimate) *error_estimate = error;
  if (!(error <= 1e-8)) {
    throw ConvergenceError("tv_distance_1d: quadrature error estimate " + std::to_string(error) + " exceeds 1e-8");
  }
  return value;
}

Radius inflated_orthant_rho(int d, double n, double R, double eta) {
  if (d < 43) throw DomainError("inflated_orthant_rho: d must be >= 43");
  require_n(n);
  if (!(R > 0.0)) throw DomainError("inflated_orthant_rho: R must be > 0");
  const int M = prior_order(d - 1, eta);
  const double s = std::sqrt(3.0) / 28.0 / (std::pow(M, 1.5) * std::sqrt(n));
  const double curved = (d - 1) * s * s / R;
  const double flat = std::sqrt(3.0) * std::sqrt(d - 1.0) * s;
  if (curved <= flat) return {curved / 12.0, "(d-1)s^2/R"};
  return {flat / 12.0, "sqrt(3)sqrt(d-1)s"};
}

ConditionalDraw sample_conditional_prior(const DiscretePrior& nu1, int d, Seed seed, std::optional<double> shift_R) {
  const int free = shift_R ? d - 1 : d;
  if (free < 1) throw DomainError("sample_conditional_prior: dimension too small");
  if (shift_R && !(*shift_R > 0.0)) throw DomainError("sample_conditional_prior: R must be > 0");
  const double u = nu1.max_location();
  if (!(u > 0.0)) throw DomainError("sample_conditional_prior: nu1 has no positive atom u");
  const int needed = static_cast<int>(std::ceil(free / 3.0));

  CounterRng rng(seed);
  ConditionalDraw out;
  out.mu = Point::Zero(d);
  if (shift_R) out.mu(d - 1) = *shift_R;
  constexpr int kBudget = 1000;
  for (out.attempts = 1; out.attempts <= kBudget; ++out.attempts) {
    int count = 0;
    for (int i = 0; i < free; ++i) {
      out.mu(i) = nu1.draw(rng.uniform());
      if (out.mu(i) == u) ++count;
    }
    if (count >= needed) {
      out.count_at_u = count;
      return out;
    }
  }
  throw ConvergenceError("sample_conditional_prior: rejection budget of 1000 attempts exhausted");
}

Point sample_product_prior(const DiscretePrior& nu0, int d, Seed seed, std::optional<double> shift_R) {
  if (d < 1) throw DomainError("sample_product_prior: d must be >= 1");
  CounterRng rng(seed);
  Point mu(d);
  const int free = shift_R ? d - 1 : d;
  for (int i = 0; i < free; ++i) mu(i) = nu0.draw(rng.uniform());
  if (shift_R) mu(d - 1) = *shift_R;
  return mu;
}

BayesErrorEstimate bayes_error_estimate(const RandomizedTest& test, const PriorSampler& prior0,
                                        const PriorSampler& prior1, const ModelParams& params, long reps,
                                        std::uint64_t master_seed) {
  if (reps < 1000) throw DomainError("bayes_error_estimate: reps must be >= 1000");
  const std::uint64_t prior0_seed = derive_master(master_seed, 1);
  const std::uint64_t noise0_seed = derive_master(master_seed, 2);
  const std::uint64_t coin0_seed = derive_master(master_seed, 3);
  const std::uint64_t prior1_seed = derive_master(master_seed, 4);
  const std::uint64_t noise1_seed = derive_master(master_seed, 5);
  const std::uint64_t coin1_seed = derive_master(master_seed, 6);

  const Counts counts = parallel_reduce(reps, Counts{}, [&](long begin, long end) {
    Counts c;
    for (long i = begin; i < end; ++i) {
      const auto stream = static_cast<std::uint64_t>(i);
      const Point mu0 = prior0({prior0_seed, stream});
      const Point x0 = sample(params, mu0, {noise0_seed, stream});
      if (test(x0, CounterRng({coin0_seed, stream}).uniform())) ++c.rejections_null;
      const Point mu1 = prior1({prior1_seed, stream});
      const Point x1 = sample(params, mu1, {noise1_seed, stream});
      if (!test(x1, CounterRng({coin1_seed, stream}).uniform())) ++c.acceptances_alt;
    }
    return c;
  });

  BayesErrorEstimate est;
  est.reps = reps;
  est.type1 = static_cast<double>(counts.rejections_null) / reps;
  est.type2 = static_cast<double>(counts.acceptances_alt) / reps;
  est.total = est.type1 + est.type2;
  est.ci_radius = 3.0 * (std::sqrt(est.type1 * (1.0 - est.type1) / reps) +
                         std::sqrt(est.type2 * (1.0 - est.type2) / reps));
  return est;
}

}  // namespace seprate
