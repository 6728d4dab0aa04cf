#pragma once

// Dense two-phase simplex for small standard-form linear programs
//   minimise c^T x  subject to  A x = b,  x >= 0.

#include <Eigen/Core>

#include <vector>

namespace seprate {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  std::vector<int> basis;  ///< basic column per (non-redundant) row
  std::vector<int> rows;   ///< constraint rows kept after dropping redundant ones
  long pivots = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double pivot_tol = 1e-11;
  long max_pivots = 200000;
};

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  const LpOptions& opts = {});

}  // namespace seprate
