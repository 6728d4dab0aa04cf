#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "seprate/body_json.hpp"
#include "seprate/checks.hpp"
#include "seprate/cli.hpp"
#include "seprate/lowerbounds.hpp"
#include "seprate/ratelab.hpp"

namespace py = pybind11;
using namespace seprate;
using nlohmann::json;

namespace {

ConvexBody body_of(const std::string& text) { return body_from_json(json::parse(text)); }

py::dict prior_dict(const DiscretePrior& p) {
  std::vector<double> loc, w;
  for (const Atom& a : p.atoms()) loc.push_back(a.location), w.push_back(a.weight);
  py::dict d;
  d["locations"] = loc;
  d["weights"] = w;
  return d;
}

DiscretePrior prior_of(const std::vector<double>& loc, const std::vector<double>& w) {
  if (loc.size() != w.size()) throw DomainError("locations and weights differ in length");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < loc.size(); ++i) atoms.push_back({loc[i], w[i]});
  return DiscretePrior(std::move(atoms));
}

TestSpec spec_of(const std::string& kind, const std::string& body, double alpha, double beta,
                 std::optional<double> R) {
  return TestSpec(parse_test_kind(kind), body_of(body), Levels(alpha, beta), R);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Separation rates for convex nulls in the Gaussian sequence model";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def("v", &v, py::arg("x"));
  m.def("gaussian_tail_threshold", &gaussian_tail_threshold, py::arg("sigma"), py::arg("delta"));
  m.def("chisq_upper_threshold", &chisq_upper_threshold, py::arg("d"), py::arg("lam"), py::arg("delta"));
  m.def("chisq_lower_threshold", &chisq_lower_threshold, py::arg("d"), py::arg("lam"), py::arg("delta"));
  m.def(
      "sample",
      [](int d, double n, const Point& mu, std::uint64_t master, std::uint64_t stream) {
        return sample(ModelParams(d, n), mu, {master, stream});
      },
      py::arg("d"), py::arg("n"), py::arg("mu"), py::arg("seed"), py::arg("stream") = 0);

  m.def(
      "project", [](const std::string& body, const Point& x) { return project(body_of(body), x); },
      py::arg("body_json"), py::arg("x"));
  m.def(
      "distance", [](const std::string& body, const Point& x) { return distance(body_of(body), x); },
      py::arg("body_json"), py::arg("x"));

  m.def(
      "run_test",
      [](const std::string& kind, const std::string& body, const Point& X, double n, double alpha, double beta,
         std::optional<double> R) {
        const TestSpec spec = spec_of(kind, body, alpha, beta, R);
        const TestOutcome o = run_test(spec, ModelParams(spec.body.dimension(), n), X);
        py::dict d;
        d["reject"] = o.reject;
        d["statistic"] = o.statistic;
        d["threshold"] = o.threshold;
        return d;
      },
      py::arg("kind"), py::arg("body_json"), py::arg("X"), py::arg("n"), py::arg("alpha") = 0.05,
      py::arg("beta") = 0.05, py::arg("R") = py::none());
  m.def(
      "guaranteed_separation",
      [](const std::string& kind, const std::string& body, double n, double alpha, double beta,
         std::optional<double> R) {
        const TestSpec spec = spec_of(kind, body, alpha, beta, R);
        const Radius r = guaranteed_separation(spec, ModelParams(spec.body.dimension(), n));
        return py::make_tuple(r.rho, r.branch);
      },
      py::arg("kind"), py::arg("body_json"), py::arg("n"), py::arg("alpha") = 0.05, py::arg("beta") = 0.05,
      py::arg("R") = py::none());
  m.def(
      "empirical_separation",
      [](const std::string& kind, const std::string& body, double n, double alpha, double beta, long reps,
         std::uint64_t seed, double bisect_tol, std::optional<double> R) {
        const TestSpec spec = spec_of(kind, body, alpha, beta, R);
        BisectionOptions opts;
        opts.bisect_tol = bisect_tol;
        const SeparationResult res = empirical_separation(spec, ModelParams(spec.body.dimension(), n), reps, seed, opts);
        py::dict d;
        d["rho_hat"] = res.rho_hat;
        d["alpha_hat"] = res.alpha_hat;
        d["beta_hat"] = res.beta_hat;
        d["rho_lo"] = res.rho_lo;
        d["rho_hi"] = res.rho_hi;
        d["warnings"] = res.warnings;
        return d;
      },
      py::arg("kind"), py::arg("body_json"), py::arg("n"), py::arg("alpha") = 0.05, py::arg("beta") = 0.05,
      py::arg("reps") = 20000, py::arg("seed") = 0, py::arg("bisect_tol") = 0.02, py::arg("R") = py::none());
  m.def("fit_loglog",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          const RateFit f = fit_loglog(x, y);
          return py::make_tuple(f.slope, f.intercept, f.r_squared);
        },
        py::arg("x"), py::arg("y"));

  m.def("two_point_separation", &two_point_separation, py::arg("n"), py::arg("eta"));
  m.def("ball_lower_separation", &ball_lower_separation, py::arg("n"), py::arg("d"), py::arg("R"), py::arg("eta"));
  m.def("ball_prior_divergence", &ball_prior_divergence, py::arg("n"), py::arg("d"), py::arg("h"));
  m.def("chi2_two_point", &chi2_two_point, py::arg("n"), py::arg("rho"));
  m.def("prior_order", &prior_order, py::arg("d"), py::arg("eta"));
  m.def("tv_bound_product", &tv_bound_product, py::arg("M"), py::arg("d"));
  m.def(
      "inflated_orthant_rho",
      [](int d, double n, double R, double eta) {
        const Radius r = inflated_orthant_rho(d, n, R, eta);
        return py::make_tuple(r.rho, r.branch);
      },
      py::arg("d"), py::arg("n"), py::arg("R"), py::arg("eta"));
  m.def(
      "prior_parameters",
      [](int d, double eta, double n, bool shifted) {
        const PriorParameters p = orthant_prior_parameters(d, eta, n, shifted);
        py::dict out;
        out["d"] = p.d;
        out["M"] = p.M;
        out["c"] = p.c;
        out["sigma"] = p.sigma;
        out["b"] = p.b;
        out["u"] = p.u;
        out["rho"] = p.rho;
        out["rho_rounded"] = p.rho_rounded;
        return out;
      },
      py::arg("d"), py::arg("eta"), py::arg("n") = 1.0, py::arg("shifted") = false);
  m.def(
      "moment_priors",
      [](int M, double b, int grid, double tol) {
        const MomentPriors mp = construct_moment_priors(M, b, grid, tol);
        py::dict out;
        out["nu0"] = prior_dict(mp.nu0);
        out["nu1"] = prior_dict(mp.nu1);
        out["u"] = mp.u;
        out["mass_at_u"] = mp.mass_at_u;
        out["max_moment_gap"] = mp.max_moment_gap;
        return out;
      },
      py::arg("M"), py::arg("b"), py::arg("grid") = 512, py::arg("tol") = 1e-8);
  m.def(
      "tv_distance_1d",
      [](const std::vector<double>& loc0, const std::vector<double>& w0, const std::vector<double>& loc1,
         const std::vector<double>& w1, double sigma) {
        return tv_distance_1d(prior_of(loc0, w0), prior_of(loc1, w1), sigma);
      },
      py::arg("loc0"), py::arg("w0"), py::arg("loc1"), py::arg("w1"), py::arg("sigma"));

  m.def(
      "run_check_suite",
      [](const std::string& suite, std::uint64_t seed) {
        py::list rows;
        for (const CheckResult& r : run_check_suite(suite, seed)) {
          py::dict d;
          d["name"] = r.name;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          d["planted"] = r.expected_failure;
          rows.append(d);
        }
        return rows;
      },
      py::arg("suite"), py::arg("seed") = 0);
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
