#include "seprate/priors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "seprate/errors.hpp"
#include "seprate/simplex.hpp"

namespace seprate {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

// Dense Gaussian elimination with partial pivoting; returns false when singular.
bool solve_wide(std::vector<std::vector<Wide>> A, std::vector<Wide> b, std::vector<Wide>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(A[r][col]) > abs(A[pivot][col])) pivot = r;
    }
    if (A[pivot][col] == 0) return false;
    std::swap(A[pivot], A[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Wide factor = A[r][col] / A[col][col];
      if (factor == 0) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
      b[r] -= factor * b[col];
    }
  }
  x.assign(n, Wide(0));
  for (std::size_t i = n; i-- > 0;) {
    Wide acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= A[i][c] * x[c];
    x[i] = acc / A[i][i];
  }
  return true;
}

// T_0..T_M at t by the three-term recurrence.
std::vector<double> chebyshev_values(double t, int M) {
  std::vector<double> T(static_cast<std::size_t>(M) + 1);
  T[0] = 1.0;
  if (M >= 1) T[1] = t;
  for (int k = 2; k <= M; ++k) T[k] = 2.0 * t * T[k - 1] - T[k - 2];
  return T;
}

struct LpPriors {
  std::vector<double> grid;  // locations in [-b, 0]
  std::vector<int> support;  // basic columns: [0, N) -> nu0, [N, 2N) -> nu1, 2N -> u
  Eigen::VectorXd x;
  long pivots = 0;
};

LpPriors solve_moment_lp(int M, double b, double u, int N) {
  LpPriors out;
  out.grid.resize(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    const double t = std::cos(std::numbers::pi * j / (N - 1));
    out.grid[j] = j == 0 ? 0.0 : (j == N - 1 ? -b : 0.5 * b * (t - 1.0));
  }

  const int cols = 2 * N + 1;
  const int rows = M + 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  rhs(0) = 1.0;
  rhs(1) = 1.0;
  for (int j = 0; j < N; ++j) {
    A(0, j) = 1.0;
    A(1, N + j) = 1.0;
    const std::vector<double> T = chebyshev_values(2.0 * out.grid[j] / b + 1.0, M);
    for (int k = 1; k <= M; ++k) {
      A(k + 1, j) = -T[k];
      A(k + 1, N + j) = T[k];
    }
  }
  A(1, 2 * N) = 1.0;
  const std::vector<double> Tu = chebyshev_values(2.0 * u / b + 1.0, M);
  for (int k = 1; k <= M; ++k) A(k + 1, 2 * N) = Tu[k];
  cost(2 * N) = -1.0;

  const LpResult lp = solve_lp(A, rhs, cost);
  if (lp.status != LpStatus::Optimal) throw ConvergenceError("moment LP did not reach an optimum");
  out.x = lp.x;
  out.support = lp.basis;
  out.pivots = lp.pivots;
  if (static_cast<int>(lp.rows.size()) != rows) throw ConvergenceError("moment LP dropped a dependent row");
  return out;
}

// Re-solves the optimal basis against raw moments in the scaled variable z / b.
bool refine_basis(const LpPriors& lp, int M, double b, double u, Eigen::VectorXd& x) {
  const int N = static_cast<int>(lp.grid.size());
  const std::size_t m = static_cast<std::size_t>(M) + 2;
  std::vector<std::vector<Wide>> A(m, std::vector<Wide>(m, Wide(0)));
  std::vector<Wide> rhs(m, Wide(0));
  rhs[0] = 1;
  rhs[1] = 1;
  const Wide wb(b);
  for (std::size_t c = 0; c < m; ++c) {
    const int col = lp.support[c];
    const bool is_u = col == 2 * N;
    const bool is_nu1 = col >= N;
    const Wide y = (is_u ? Wide(u) : Wide(lp.grid[col % N])) / wb;
    const Wide sign = is_nu1 ? Wide(1) : Wide(-1);
    A[is_nu1 ? 1 : 0][c] = 1;
    Wide power(1);
    for (int k = 1; k <= M; ++k) {
      power *= y;
      A[static_cast<std::size_t>(k) + 1][c] = sign * power;
    }
  }
  std::vector<Wide> sol;
  if (!solve_wide(A, rhs, sol)) return false;
  x = Eigen::VectorXd::Zero(2 * N + 1);
  for (std::size_t c = 0; c < m; ++c) {
    double value = static_cast<double>(sol[c]);
    if (value < 0.0) {
      if (value < -1e-12) return false;
      value = 0.0;
    }
    x(lp.support[c]) = value;
  }
  return true;
}

}  // namespace

DiscretePrior::DiscretePrior(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("prior needs at least one atom");
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.location)) throw DomainError("prior atom location must be finite");
    if (!(a.weight >= 0.0)) throw DomainError("prior weights must be >= 0");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("prior weights must sum to 1");
  cumulative_.reserve(atoms_.size());
  double acc = 0.0;
  for (const Atom& a : atoms_) cumulative_.push_back(acc += a.weight);
}

DiscretePrior DiscretePrior::dirac(double location) { return DiscretePrior({{location, 1.0}}); }

double DiscretePrior::min_location() const {
  return std::min_element(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
           return a.location < b.location;
         })->location;
}

double DiscretePrior::max_location() const {
  return std::max_element(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
           return a.location < b.location;
         })->location;
}

double DiscretePrior::mass_at(double location) const {
  double mass = 0.0;
  for (const Atom& a : atoms_) {
    if (a.location == location) mass += a.weight;
  }
  return mass;
}

double DiscretePrior::draw(double u) const {
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) --it;
  // Skip zero-weight atoms that share the cumulative value.
  auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  while (atoms_[idx].weight == 0.0 && idx + 1 < atoms_.size()) ++idx;
  return atoms_[idx].location;
}

double moment(const DiscretePrior& prior, int k) {
  Wide acc(0);
  for (const Atom& a : prior.atoms()) acc += Wide(a.weight) * pow(Wide(a.location), k);
  return static_cast<double>(acc);
}

double max_moment_gap(const DiscretePrior& a, const DiscretePrior& b, int max_order) {
  double worst = 0.0;
  for (int k = 0; k <= max_order; ++k) {
    Wide gap(0);
    for (const Atom& at : a.atoms()) gap += Wide(at.weight) * pow(Wide(at.location), k);
    for (const Atom& at : b.atoms()) gap -= Wide(at.weight) * pow(Wide(at.location), k);
    worst = std::max(worst, std::abs(static_cast<double>(gap)));
  }
  return worst;
}

nlohmann::json prior_to_json(const DiscretePrior& prior) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : prior.atoms()) atoms.push_back({a.location, a.weight});
  return {{"atoms", atoms}};
}

DiscretePrior prior_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
    throw DomainError("prior JSON must be {\"atoms\": [[location, weight], ...]}");
  }
  std::vector<Atom> atoms;
  for (const auto& pair : j["atoms"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw DomainError("prior atom must be [location, weight]");
    }
    atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return DiscretePrior(std::move(atoms));
}

MomentPriors construct_moment_priors(int M, double b, int grid, double tol) {
  if (M < 1) throw DomainError("construct_moment_priors: M must be >= 1");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("construct_moment_priors: b must be finite and > 0");
  if (grid < M + 2) throw DomainError("construct_moment_priors: grid must be >= M + 2");
  if (!(tol > 0.0)) throw DomainError("construct_moment_priors: tol must be > 0");

  const double u = b / (4.0 * M * M);
  constexpr int kAttempts = 3;
  std::string last_failure;
  for (int attempt = 0, N = grid; attempt < kAttempts; ++attempt, N *= 2) {
    LpPriors lp;
    try {
      lp = solve_moment_lp(M, b, u, N);
    } catch (const ConvergenceError& e) {
      last_failure = e.what();
      continue;
    }
    Eigen::VectorXd x = lp.x;
    Eigen::VectorXd refined;
    if (refine_basis(lp, M, b, u, refined)) x = refined;

    std::vector<Atom> atoms0, atoms1;
    for (int j = 0; j < N; ++j) {
      if (x(j) > 0.0) atoms0.push_back({lp.grid[j], x(j)});
      if (x(N + j) > 0.0) atoms1.push_back({lp.grid[j], x(N + j)});
    }
    const double w = x(2 * N);
    if (w > 0.0) atoms1.push_back({u, w});
    // Renormalise the last ulp so the priors pass the sum-to-one invariant.
    auto normalise = [](std::vector<Atom>& atoms) {
      double total = 0.0;
      for (const Atom& a : atoms) total += a.weight;
      for (Atom& a : atoms) a.weight /= total;
    };
    normalise(atoms0);
    normalise(atoms1);

    MomentPriors out;
    out.nu0 = DiscretePrior(std::move(atoms0));
    out.nu1 = DiscretePrior(std::move(atoms1));
    out.M = M;
    out.b = b;
    out.u = u;
    out.mass_at_u = out.nu1.mass_at(u);
    out.max_moment_gap = max_moment_gap(out.nu0, out.nu1, M);
    out.grid = N;
    out.pivots = lp.pivots;
    if (out.max_moment_gap > tol) {
      last_failure = "moment gap " + std::to_string(out.max_moment_gap) + " exceeds tolerance";
      continue;
    }
    if (out.mass_at_u < 0.5 - tol) {
      throw ConvergenceError("moment priors put mass " + std::to_string(out.mass_at_u) +
                             " < 1/2 at u; numerical failure");
    }
    return out;
  }
  throw ConvergenceError("construct_moment_priors failed after grid densification: " + last_failure);
}

}  // namespace seprate
