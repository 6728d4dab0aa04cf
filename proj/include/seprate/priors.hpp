#pragma once

// Finitely supported priors on the real line and the moment-matching pair
// (nu0, nu1) behind the orthant lower bound:
//
//   supp nu0 in [-b, 0],  supp nu1 in [-b, 0] + {u},  u = b / (4 M^2),
//   nu1({u}) >= 1/2,      int z^k dnu0 = int z^k dnu1  for k = 0..M.

#include <json.hpp>

#include <vector>

#include "seprate/errors.hpp"
#include "seprate/rng.hpp"

namespace seprate {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

class DiscretePrior {
 public:
  DiscretePrior() = default;
  /// Validates weights >= 0 summing to 1 (1e-12) and finite locations.
  explicit DiscretePrior(std::vector<Atom> atoms);
  static DiscretePrior dirac(double location);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double min_location() const;
  double max_location() const;
  /// Mass placed exactly at `location`.
  double mass_at(double location) const;
  /// Inverse-CDF draw from a uniform u in [0, 1).
  double draw(double u) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

/// sum_i w_i z_i^k, accumulated in 50-digit arithmetic.
double moment(const DiscretePrior& prior, int k);
/// max_{k <= max_order} |moment(a, k) - moment(b, k)|, accumulated in 50-digit arithmetic.
double max_moment_gap(const DiscretePrior& a, const DiscretePrior& b, int max_order);

nlohmann::json prior_to_json(const DiscretePrior& prior);
/// {"atoms": [[location, weight], ...]}
DiscretePrior prior_from_json(const nlohmann::json& j);

struct MomentPriors {
  DiscretePrior nu0;
  DiscretePrior nu1;
  int M = 0;
  double b = 0.0;
  double u = 0.0;
  double mass_at_u = 0.0;
  double max_moment_gap = 0.0;
  int grid = 0;  ///< grid size actually used (after any densification retries)
  long pivots = 0;
};

/// Linear program over a Chebyshev-Lobatto grid on [-b, 0] plus the atom u:
/// maximise nu1({u}) subject to matching moments 0..M, written in the
/// Chebyshev basis of [-b, 0] for conditioning. The optimal basis is then
/// re-solved in 50-digit arithmetic against raw monomial moments so the stored
/// double weights match to rounding. Retries with a doubled grid if the LP
/// fails; throws ConvergenceError when the moments cannot be matched to `tol`
/// or the mass at u ends below 1/2 - tol.
MomentPriors construct_moment_priors(int M, double b, int grid = 512, double tol = 1e-8);

}  // namespace seprate
