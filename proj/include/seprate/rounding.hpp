#pragma once

// Sampled certification of local R-rounding for a boundary patch written as
// the graph of f : B_{d-1}(0, r) -> [0, inf) after rotating the boundary
// point to the origin and the body into the upper half-space.

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seprate/model.hpp"

namespace seprate {

struct BoundaryGraph {
  int dim = 1;  ///< d - 1
  double r = 1.0;
  std::function<double(const Point&)> f;
  std::function<Point(const Point&)> grad;            ///< optional; central differences otherwise
  std::function<Eigen::MatrixXd(const Point&)> hess;  ///< optional; central differences otherwise
};

struct RoundingViolation {
  Point at;
  double eigenvalue;  ///< the offending extreme eigenvalue (or |grad f(0)| for the origin check)
  std::string reason;
};

struct RoundingCertificate {
  bool ok = true;
  int points_checked = 0;
  int points_by_curvature = 0;  ///< accepted by the Hessian eigenvalue bounds
  int points_by_sag = 0;        ///< accepted by the direct sag bound after an eigenvalue miss
  std::vector<RoundingViolation> violations;
};

/// Checks grad f(0) = 0 (1e-8) and, at `samples` Halton points of B \ {0},
/// that the Hessian's extreme eigenvalues lie in [-1e-8, 1/R + 1e-8].
///
/// Those eigenvalue bounds are sufficient for the graph to stay inside the
/// ball of radius R resting on the origin, i.e. 0 <= f(x) <= R - sqrt(R^2 - |x|^2).
/// They are not necessary: a spherical cap of radius R has Hessian eigenvalues
/// above 1/R away from the origin while lying exactly on that ball. A point
/// whose eigenvalues miss the window is therefore still accepted when the sag
/// bound itself holds (to 1e-12 relative); only points failing both count as
/// violations.
RoundingCertificate check_local_rounding(const BoundaryGraph& graph, double R, int samples);

/// Central-difference Hessian with step (machine eps)^{1/3} (1 + |x|) on the gradient.
Eigen::MatrixXd finite_difference_hessian(const std::function<Point(const Point&)>& grad, const Point& x);
/// Central-difference gradient with step (machine eps)^{1/3} (1 + |x|).
Point finite_difference_gradient(const std::function<double(const Point&)>& f, const Point& x);
/// Second differences of f alone, step (machine eps)^{1/4} (1 + |x|).
Eigen::MatrixXd finite_difference_hessian_from_values(const std::function<double(const Point&)>& f,
                                                      const Point& x);

/// i-th point of the Halton sequence in [0, 1)^dim (bases = first dim primes).
std::vector<double> halton_point(long index, int dim);

}  // namespace seprate
