#include "seprate/simplex.hpp"

#include <cmath>
#include <limits>

#include "seprate/errors.hpp"

namespace seprate {

namespace {

// Tableau with one row per constraint plus the reduced-cost row at the
// bottom; the last column is the right-hand side.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
      : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())), T_(m_ + 1, n_ + m_ + 1), basis_(m_) {
    T_.setZero();
    for (int i = 0; i < m_; ++i) {
      const double sign = b(i) < 0.0 ? -1.0 : 1.0;
      T_.row(i).head(n_) = sign * A.row(i);
      T_(i, n_ + i) = 1.0;
      T_(i, rhs()) = sign * b(i);
      basis_[i] = n_ + i;
    }
    active_.assign(m_, true);
  }

  int rhs() const { return n_ + m_; }
  bool artificial(int col) const { return col >= n_; }

  void set_phase_one_costs() {
    T_.row(m_).setZero();
    for (int i = 0; i < m_; ++i) {
      if (active_[i]) T_.row(m_) -= T_.row(i);
    }
    for (int i = 0; i < m_; ++i) T_(m_, n_ + i) = 0.0;
  }

  void set_phase_two_costs(const Eigen::VectorXd& c) {
    T_.row(m_).setZero();
    T_.row(m_).head(n_) = c.transpose();
    for (int i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const int k = basis_[i];
      if (!artificial(k) && c(k) != 0.0) T_.row(m_) -= c(k) * T_.row(i);
    }
  }

  void pivot(int row, int col) {
    T_.row(row) /= T_(row, col);
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double factor = T_(i, col);
      if (factor != 0.0) T_.row(i) -= factor * T_.row(row);
    }
    basis_[row] = col;
  }

  // Runs simplex iterations on the current cost row. Artificial columns may
  // not enter when `allow_artificial` is false.
  LpStatus iterate(bool allow_artificial, const LpOptions& opts, long& pivots) {
    int degenerate_run = 0;
    while (pivots < opts.max_pivots) {
      const bool bland = degenerate_run > 50;
      int entering = -1;
      double best = -opts.pivot_tol;
      const int limit = allow_artificial ? n_ + m_ : n_;
      for (int j = 0; j < limit; ++j) {
        const double rc = T_(m_, j);
        if (rc < best) {
          entering = j;
          if (bland) break;
          best = rc;
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (!active_[i]) continue;
        const double a = T_(i, entering);
        if (a <= opts.pivot_tol) continue;
        const double ratio = std::max(T_(i, rhs()), 0.0) / a;
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && leaving >= 0 && basis_[i] < basis_[leaving])) {
          best_ratio = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) return LpStatus::Unbounded;
      degenerate_run = best_ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leaving, entering);
      ++pivots;
    }
    return LpStatus::IterationLimit;
  }

  double phase_one_infeasibility() const { return -T_(m_, rhs()); }

  // Pivots basic artificials out of the basis; rows where that is impossible
  // are linearly dependent and are dropped.
  void expel_artificials(const LpOptions& opts) {
    for (int i = 0; i < m_; ++i) {
      if (!active_[i] || !artificial(basis_[i])) continue;
      int col = -1;
      double best = opts.pivot_tol;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(T_(i, j)) > best) {
          best = std::abs(T_(i, j));
          col = j;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        active_[i] = false;
      }
    }
  }

  LpResult extract(LpStatus status, long pivots) const {
    LpResult result;
    result.status = status;
    result.pivots = pivots;
    result.x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      result.rows.push_back(i);
      result.basis.push_back(basis_[i]);
      if (!artificial(basis_[i])) result.x(basis_[i]) = T_(i, rhs());
    }
    return result;
  }

 private:
  int m_;
  int n_;
  Eigen::MatrixXd T_;
  std::vector<int> basis_;
  std::vector<bool> active_;
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c, const LpOptions& opts) {
  if (A.rows() != b.size() || A.cols() != c.size()) throw DomainError("solve_lp: inconsistent dimensions");
  if (A.rows() == 0 || A.cols() == 0) throw DomainError("solve_lp: empty problem");

  Tableau tableau(A, b);
  long pivots = 0;

  tableau.set_phase_one_costs();
  LpStatus status = tableau.iterate(true, opts, pivots);
  if (status == LpStatus::IterationLimit) return tableau.extract(status, pivots);
  if (tableau.phase_one_infeasibility() > opts.feasibility_tol * (1.0 + b.lpNorm<Eigen::Infinity>())) {
    return tableau.extract(LpStatus::Infeasible, pivots);
  }
  tableau.expel_artificials(opts);

  tableau.set_phase_two_costs(c);
  status = tableau.iterate(false, opts, pivots);
  LpResult result = tableau.extract(status, pivots);
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace seprate
