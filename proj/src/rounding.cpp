#include "seprate/rounding.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>

namespace seprate {

namespace {

constexpr double kEigenTol = 1e-8;
constexpr double kGradTol = 1e-8;

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int candidate = 2; static_cast<int>(primes.size()) < count; ++candidate) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

double radical_inverse(long index, int base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += scale * static_cast<double>(index % base);
    index /= base;
    scale /= base;
  }
  return result;
}

// Halton point -> point of the open ball B(0, r) \ {0}: Gaussian direction via
// the inverse normal CDF, radius r u^{1/m} for uniform volume.
Point ball_point(long index, int dim, double r) {
  const std::vector<double> u = halton_point(index, dim + 1);
  Point dir(dim);
  for (int i = 0; i < dim; ++i) dir(i) = std::sqrt(2.0) * boost::math::erf_inv(2.0 * u[i] - 1.0);
  const double norm = dir.norm();
  if (!(norm > 0.0)) dir.setZero(), dir(0) = 1.0;
  else dir /= norm;
  return r * std::pow(u[dim], 1.0 / dim) * dir;
}

Eigen::MatrixXd hessian_at(const BoundaryGraph& g, const Point& x) {
  if (g.hess) return g.hess(x);
  if (g.grad) return finite_difference_hessian(g.grad, x);
  return finite_difference_hessian_from_values(g.f, x);
}

}  // namespace

std::vector<double> halton_point(long index, int dim) {
  static const std::vector<int> kPrimes = first_primes(256);
  if (dim < 1 || dim > static_cast<int>(kPrimes.size())) throw DomainError("halton_point: dim out of range");
  std::vector<double> out(dim);
  for (int i = 0; i < dim; ++i) out[i] = radical_inverse(index, kPrimes[i]);
  return out;
}

Point finite_difference_gradient(const std::function<double(const Point&)>& f, const Point& x) {
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + x.norm());
  Point g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Point plus = x, minus = x;
    plus(i) += h;
    minus(i) -= h;
    g(i) = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd finite_difference_hessian(const std::function<Point(const Point&)>& grad, const Point& x) {
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + x.norm());
  const int m = static_cast<int>(x.size());
  Eigen::MatrixXd H(m, m);
  for (int i = 0; i < m; ++i) {
    Point plus = x, minus = x;
    plus(i) += h;
    minus(i) -= h;
    H.col(i) = (grad(plus) - grad(minus)) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

Eigen::MatrixXd finite_difference_hessian_from_values(const std::function<double(const Point&)>& f,
                                                      const Point& x) {
  const double h = std::pow(std::numeric_limits<double>::epsilon(), 0.25) * (1.0 + x.norm());
  const int m = static_cast<int>(x.size());
  Eigen::MatrixXd H(m, m);
  const double f0 = f(x);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      if (i == j) {
        Point plus = x, minus = x;
        plus(i) += h;
        minus(i) -= h;
        H(i, i) = (f(plus) - 2.0 * f0 + f(minus)) / (h * h);
        continue;
      }
      Point pp = x, pm = x, mp = x, mm = x;
      pp(i) += h, pp(j) += h;
      pm(i) += h, pm(j) -= h;
      mp(i) -= h, mp(j) += h;
      mm(i) -= h, mm(j) -= h;
      H(i, j) = H(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
    }
  }
  return H;
}

RoundingCertificate check_local_rounding(const BoundaryGraph& graph, double R, int samples) {
  if (!(R > 0.0)) throw DomainError("check_local_rounding: R must be > 0");
  if (!(graph.r > 0.0)) throw DomainError("check_local_rounding: patch radius must be > 0");
  if (graph.dim < 1) throw DomainError("check_local_rounding: graph dimension must be >= 1");
  if (!graph.f) throw DomainError("check_local_rounding: f is required");
  if (samples < 1) throw DomainError("check_local_rounding: need at least one sample");

  RoundingCertificate cert;
  const Point origin = Point::Zero(graph.dim);
  const Point g0 = graph.grad ? graph.grad(origin) : finite_difference_gradient(graph.f, origin);
  if (!g0.allFinite()) throw std::runtime_error("check_local_rounding: gradient evaluation failed at 0");
  if (g0.norm() > kGradTol) cert.violations.push_back({origin, g0.norm(), "gradient at origin is not zero"});

  const double upper = 1.0 / R;
  for (long i = 1; i <= samples; ++i) {
    const Point x = ball_point(i, graph.dim, graph.r);
    const Eigen::MatrixXd H = hessian_at(graph, x);
    if (!H.allFinite()) throw std::runtime_error("check_local_rounding: Hessian evaluation failed");
    const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H, Eigen::EigenvaluesOnly).eigenvalues();
    const double lo = eig.minCoeff();
    const double hi = eig.maxCoeff();
    ++cert.points_checked;
    if (lo >= -kEigenTol && hi <= upper + kEigenTol) {
      ++cert.points_by_curvature;
      continue;
    }

    const double fx = graph.f(x);
    if (!std::isfinite(fx)) throw std::runtime_error("check_local_rounding: f evaluation failed");
    const double rho2 = x.squaredNorm();
    if (rho2 < R * R) {
      // R - sqrt(R^2 - rho^2), written without cancellation.
      const double sag = rho2 / (R + std::sqrt(R * R - rho2));
      // Room for rounding in a caller's f evaluated as R - sqrt(R^2 - |x|^2).
      const double slack = 1e-12 * sag + 8.0 * std::numeric_limits<double>::epsilon() * R;
      if (fx >= -slack && fx <= sag + slack) {
        ++cert.points_by_sag;
        continue;
      }
    }
    const bool too_curved = hi > upper + kEigenTol;
    cert.violations.push_back({x, too_curved ? hi : lo,
                               too_curved ? "largest Hessian eigenvalue exceeds 1/R and graph leaves the ball"
                                          : "smallest Hessian eigenvalue negative and graph leaves the ball"});
  }
  cert.ok = cert.violations.empty();
  return cert;
}

}  // namespace seprate
