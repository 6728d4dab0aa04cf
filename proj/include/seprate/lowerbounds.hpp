#pragma once

// Bayesian lower-bound machinery: two-point and ball priors with their
// chi-square divergences, the moment-prior product construction for the
// (inflated) orthant with its TV bound and conditioning step, and a Monte
// Carlo estimate of the Bayes testing error against a pair of priors.

#include <functional>
#include <optional>
#include <string>

#include "seprate/priors.hpp"
#include "seprate/testkit.hpp"

namespace seprate {

/// A closed-form divergence next to an independent quadrature of it.
struct DivergenceReport {
  double formula_value = 0.0;
  double numeric_value = 0.0;
  double abs_gap = 0.0;
  std::string method;
};

// Two-point prior -------------------------------------------------------------

/// sqrt(ln(1 + 4 (1 - eta)^2) / n).
double two_point_separation(double n, double eta);
/// exp(n rho^2).
double chi2_two_point(double n, double rho);
/// chi2_two_point against Gauss-Kronrod quadrature of int phi_rho^2 / phi_0.
DivergenceReport chi2_two_point_report(double n, double rho);

// Ball prior ------------------------------------------------------------------

/// cosh(n h^2)^(d - 1).
double ball_prior_divergence(double n, int d, double h);
/// Quadrature of E[cosh^2(n h Y)] e^{-n h^2}, Y ~ N(0, 1/n), raised to d - 1.
DivergenceReport ball_prior_divergence_report(double n, int d, double h);
/// h^2 = ((R + rho)^2 - R^2) / (d - 1).
double ball_h_from_rho(int d, double R, double rho);
double ball_rho_from_h(int d, double R, double h);
/// 1 + (e/2) x^2, an upper bound on cosh(x) for x in [0, 1].
double cosh_taylor_bound(double x);
/// s / (2 sqrt(s + R^2)), s = sqrt(d - 1)/n sqrt((2/e) ln(1 + 4 (1 - eta)^2)); d >= 3.
double ball_lower_separation(double n, int d, double R, double eta);

// Orthant moment priors --------------------------------------------------------

/// max(32, ceil(2/(1 - ln 2) ln(d) + 1 + 2/(1 - ln 2) ln(1.8 / (8/9 - eta)))).
int prior_order(int d, double eta);

struct PriorParameters {
  int d = 0;  ///< ambient dimension
  int M = 0;
  double c = 0.0;      ///< 2 sqrt(2) / (sqrt(17) e)
  double sigma = 0.0;  ///< 1 / sqrt(n)
  double b = 0.0;      ///< c sqrt(M) sigma
  double u = 0.0;      ///< b / (4 M^2)
  double rho = 0.0;    ///< sqrt(k / 3) u with k = d (orthant) or d - 1 (shifted)
  double rho_rounded = 0.0;  ///< (1/28) M^{-3/2} sqrt(k) / sqrt(n)
  bool shifted = false;
};

/// Orthant (d >= 42) or, with `shifted`, inflated-orthant (d >= 43, M from d - 1)
/// prior parameters; eta in (0, 8/9).
PriorParameters orthant_prior_parameters(int d, double eta, double n = 1.0, bool shifted = false);

/// d (1 + 1/(2 sqrt(pi))) (2/(e - 2)) (2/e)^floor(M/2); M >= 32.
double tv_bound_product(int M, int d);

/// L1 distance between the Gaussian mixtures nu0 * N(0, sigma^2) and
/// nu1 * N(0, sigma^2), by adaptive Gauss-Kronrod quadrature over
/// [min support - 10 sigma, max support + 10 sigma] to absolute error 1e-12.
/// Throws ConvergenceError when the error estimate exceeds 1e-8.
double tv_distance_1d(const DiscretePrior& nu0, const DiscretePrior& nu1, double sigma,
                      double* error_estimate = nullptr);

/// (1/12) min((d - 1) s^2 / R, sqrt(3) sqrt(d - 1) s), s = (sqrt(3)/28) M^{-3/2} / sqrt(n),
/// M = prior_order(d - 1, eta); d >= 43.
Radius inflated_orthant_rho(int d, double n, double R, double eta);

struct ConditionalDraw {
  Point mu;
  int attempts = 0;
  int count_at_u = 0;  ///< Y, the number of free coordinates equal to u
};

/// Draws mu with i.i.d. coordinates from nu1 until at least k/3 of them equal
/// u = nu1.max_location() (k = d, or d - 1 with `shift_R`, in which case the
/// last coordinate is pinned to R). Throws ConvergenceError after 1000 attempts.
ConditionalDraw sample_conditional_prior(const DiscretePrior& nu1, int d, Seed seed,
                                         std::optional<double> shift_R = std::nullopt);

/// mu with i.i.d. coordinates from nu0 (last coordinate pinned to R with `shift_R`).
Point sample_product_prior(const DiscretePrior& nu0, int d, Seed seed,
                           std::optional<double> shift_R = std::nullopt);

// Bayes error -----------------------------------------------------------------

/// Possibly randomised test: observation plus an independent uniform draw.
using RandomizedTest = std::function<bool(const Point& X, double uniform)>;
using PriorSampler = std::function<Point(Seed)>;

struct BayesErrorEstimate {
  double type1 = 0.0;  ///< P_{nu0}(reject)
  double type2 = 0.0;  ///< P_{nu1}(accept)
  double total = 0.0;
  long reps = 0;
  double ci_radius = 0.0;  ///< 3 sigma binomial radius of `total` (sum of the two)
};

/// Monte Carlo estimate of P_{nu0}(phi = 1) + P_{nu1}(phi = 0); reps >= 1000.
BayesErrorEstimate bayes_error_estimate(const RandomizedTest& test, const PriorSampler& prior0,
                                        const PriorSampler& prior1, const ModelParams& params,
                                        long reps, std::uint64_t master_seed);

}  // namespace seprate
