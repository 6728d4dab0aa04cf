#pragma once

// Monte Carlo error levels at extremal null/alternative configurations,
// bisection for the empirical separation radius, parameter sweeps and
// log-log slope fits.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seprate/testkit.hpp"

namespace seprate {

/// Extremal configuration: the null mean and the alternative ray
/// alt(rho) = alt_base + rho * direction, with dist(alt(rho), C) = rho.
struct Scenario {
  Point null_mu;
  Point alt_base;
  Point direction;
  std::string description;

  Point alternative(double rho) const { return alt_base + rho * direction; }
};

/// Half-space: null on the hyperplane, alternative along the normal.
/// Orthant: null at the corner, alternative leaving a face far from the corner.
/// Ball: null at center + r e_1, alternative further out along e_1.
/// Inflated: the base configuration pushed out by R along its direction.
/// Throws DomainError for intersections, which need explicit points.
Scenario make_scenario(const ConvexBody& body, const ModelParams& params);

struct ErrorEstimate {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  long reps = 0;
  double ci_radius = 0.0;  ///< max over both components of 3 sqrt(p(1 - p) / reps)
};

/// 3 sqrt(p (1 - p) / reps).
double binomial_ci_radius(double p, long reps);

/// Rejection frequency at null_mu and acceptance frequency at alt_mu over
/// `reps` replicates. Replicate i uses stream i of two masters derived from
/// `master_seed`, so equal seeds give common random numbers across calls.
/// Requires null_mu in the body (1e-9) and alt_mu outside it.
ErrorEstimate estimate_errors(const TestSpec& spec, const Point& null_mu, const Point& alt_mu,
                              const ModelParams& params, long reps, std::uint64_t master_seed);

struct BisectionOptions {
  double rho_lo = 0.0;
  std::optional<double> rho_hi;  ///< defaults to guaranteed_separation
  double bisect_tol = 0.02;      ///< final bracket width relative to the validated rho_hi
  int max_expansions = 20;
};

struct SeparationResult {
  double rho_hat = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;  ///< at rho_hat
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  long reps = 0;
  int steps = 0;
  std::vector<std::string> warnings;
};

/// Bisects total error alpha_hat + beta_hat(rho) against eta = alpha + beta
/// at the body's extremal scenario, with common random numbers at every step.
/// The bracket is validated first (rho_hi doubled while the total error there
/// is still >= eta); an invalid lower end throws DomainError. Non-monotone
/// steps beyond the CI are recorded as warnings.
SeparationResult empirical_separation(const TestSpec& spec, const ModelParams& params, long reps,
                                      std::uint64_t master_seed, const BisectionOptions& opts = {});

/// Body families a sweep can rebuild at every grid value.
/// "halfspace" (canonical), "orthant", "ball" (centered, radius R), "inflated-orthant".
ConvexBody family_body(const std::string& family, int d, std::optional<double> R);
bool family_uses_R(const std::string& family);

enum class SweepAxis { D, N, R };
std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

struct SweepConfig {
  SweepAxis axis = SweepAxis::N;
  std::vector<double> values;
  std::string family = "halfspace";
  TestKind test = TestKind::HalfSpace;
  int d = 1;
  double n = 100.0;
  std::optional<double> R;
  double eta = 0.1;
  long reps = 20000;
  std::uint64_t seed = 0;
  double bisect_tol = 0.02;
};

struct SweepRow {
  std::string body;
  int d = 0;
  double n = 0.0;
  std::optional<double> R;
  double eta = 0.0;
  double rho_hat = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  long reps = 0;
  std::uint64_t seed = 0;
  // Not part of the CSV.
  double upper_bound = 0.0;            ///< guaranteed separation of the test
  std::optional<double> lower_bound;   ///< closed-form lower radius when one exists for the body
  std::vector<std::string> warnings;
};

/// One empirical_separation per grid value (strictly increasing, >= 4 values),
/// all with the same master seed.
std::vector<SweepRow> rate_sweep(const SweepConfig& config);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  ///< (log x, log rho_hat)
};

/// OLS of log(rho_hat) on log(axis value); >= 4 rows with rho_hat > 0.
RateFit fit_loglog(const std::vector<SweepRow>& rows, SweepAxis axis);
RateFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

inline constexpr const char* kSweepCsvHeader = "body,d,n,R,eta,rho_hat,alpha_hat,beta_hat,reps,seed";
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace seprate
