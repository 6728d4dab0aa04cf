#include "seprate/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>

#include "seprate/body_json.hpp"
#include "seprate/checks.hpp"
#include "seprate/errors.hpp"
#include "seprate/lowerbounds.hpp"
#include "seprate/priors.hpp"
#include "seprate/ratelab.hpp"
#include "seprate/testkit.hpp"

namespace seprate {

namespace {

using json = nlohmann::json;
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// Flags of one subcommand. Each flag can also be supplied through --config;
// values given on the command line win. `resolved()` echoes the final values.
class Flags {
 public:
  explicit Flags(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "JSON file with flag values (keys = flag names)");
  }

  template <class T>
  CLI::Option* add(const std::string& name, T& var, const std::string& desc) {
    CLI::Option* opt = app_->add_option("--" + name, var, desc);
    bindings_.push_back({name, opt,
                         [&var](const json& j) {
                           if constexpr (std::is_same_v<T, std::string>) {
                             // Structured values (e.g. an inline body) are kept as their JSON text.
                             if (j.is_object() || j.is_array()) {
                               var = j.dump();
                               return;
                             }
                           }
                           var = j.get<T>();
                         },
                         [&var] { return json(var); }});
    return opt;
  }

  /// A real flag whose absence is recorded as NaN (null in reports).
  CLI::Option* add_optional(const std::string& name, double& var, const std::string& desc) {
    CLI::Option* opt = app_->add_option("--" + name, var, desc);
    bindings_.push_back({name, opt, [&var](const json& j) { var = j.is_null() ? kUnset : j.get<double>(); },
                         [&var] { return std::isnan(var) ? json(nullptr) : json(var); }});
    return opt;
  }

  /// A list flag given as "a,b,c" on the command line or as an array in the config.
  CLI::Option* add_list(const std::string& name, std::string& var, const std::string& desc) {
    CLI::Option* opt = app_->add_option("--" + name, var, desc);
    bindings_.push_back({name, opt,
                         [&var](const json& j) {
                           if (!j.is_array()) {
                             var = j.get<std::string>();
                             return;
                           }
                           std::string joined;
                           for (const auto& item : j) {
                             if (!joined.empty()) joined += ',';
                             joined += item.is_string() ? item.get<std::string>() : item.dump();
                           }
                           var = joined;
                         },
                         [&var] { return json(var); }});
    return opt;
  }

  bool given(const std::string& name) const {
    for (const Binding& b : bindings_) {
      if (b.name == name) return b.opt->count() > 0 || from_config_.count(name) > 0;
    }
    return false;
  }

  void apply_config() {
    if (config_path_.empty()) return;
    std::ifstream in(config_path_);
    if (!in) throw DomainError("cannot read config file '" + config_path_ + "'");
    const json cfg = json::parse(in);
    if (!cfg.is_object()) throw DomainError("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      auto it = std::find_if(bindings_.begin(), bindings_.end(), [&](const Binding& b) { return b.name == key; });
      if (it == bindings_.end()) throw DomainError("config file: unknown key '" + key + "'");
      if (it->opt->count() > 0) continue;
      try {
        it->set(value);
      } catch (const json::exception& e) {
        throw DomainError("config file: bad value for '" + key + "': " + e.what());
      }
      from_config_.insert({key, true});
    }
  }

  json resolved() const {
    json j = json::object();
    for (const Binding& b : bindings_) j[b.name] = b.get();
    return j;
  }

 private:
  struct Binding {
    std::string name;
    CLI::Option* opt;
    std::function<void(const json&)> set;
    std::function<json()> get;
  };
  CLI::App* app_;
  std::string config_path_;
  std::vector<Binding> bindings_;
  std::map<std::string, bool> from_config_;
};

std::optional<double> optional_of(double x) { return std::isnan(x) ? std::nullopt : std::optional<double>(x); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
json load_json_arg(const std::string& arg, const char* what) {
  const std::string text = trim(arg);
  if (text.empty()) throw DomainError(std::string(what) + " is empty");
  if (text.front() == '{' || text.front() == '[') return json::parse(text);
  std::ifstream in(text);
  if (!in) throw DomainError(std::string("cannot read ") + what + " file '" + text + "'");
  return json::parse(in);
}

std::vector<double> parse_list(const std::string& arg, const char* what) {
  std::string text = trim(arg);
  if (!text.empty() && text.front() == '[') return load_json_arg(text, what).get<std::vector<double>>();
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw DomainError(std::string(what) + ": empty entry");
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw DomainError(std::string(what) + ": '" + item + "' is not a number");
    values.push_back(x);
  }
  if (values.empty()) throw DomainError(std::string(what) + ": empty list");
  return values;
}

void emit(const json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  out << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + out_path + "'");
    f << text;
  }
}

json report_json(const DivergenceReport& r) {
  return {{"formula", r.formula_value}, {"numeric", r.numeric_value}, {"abs_gap", r.abs_gap}, {"method", r.method}};
}

// ---------------------------------------------------------------------------

struct TestArgs {
  std::string body, mu, test = "plugin", out;
  double n = 100.0, alpha = 0.05, beta = 0.05, R = kUnset;
  std::uint64_t seed = 0;
};

void add_test_flags(Flags& f, TestArgs& a) {
  f.add("body", a.body, "body JSON (inline or file)")->required();
  f.add_list("mu", a.mu, "mean vector: a,b,c or a JSON array")->required();
  f.add("test", a.test, "halfspace | plugin | rounded | ball");
  f.add("n", a.n, "variance scaling n");
  f.add("alpha", a.alpha, "type-I level in (0, 1/2)");
  f.add("beta", a.beta, "type-II level in (0, 1/2)");
  f.add_optional("R", a.R, "rounding radius for the rounded test");
  f.add("seed", a.seed, "master seed");
  f.add("out", a.out, "also write the JSON report here");
}

int cmd_test(const Flags& flags, const TestArgs& a, std::ostream& out) {
  const ConvexBody body = body_from_json(load_json_arg(a.body, "body"));
  const std::vector<double> mu_values = parse_list(a.mu, "mu");
  const Point mu = Eigen::Map<const Eigen::VectorXd>(mu_values.data(), static_cast<long>(mu_values.size()));
  if (mu.size() != body.dimension()) throw DimensionMismatch("mu", body.dimension(), mu.size());
  const ModelParams params(body.dimension(), a.n);
  const TestSpec spec(parse_test_kind(a.test), body, Levels(a.alpha, a.beta), optional_of(a.R));
  const Point X = sample(params, mu, {a.seed, 0});
  const TestOutcome outcome = run_test(spec, params, X);

  json warnings = json::array();
  if (spec.kind == TestKind::Ball && !ball_side_condition_holds(body.dimension(), spec.levels.eta())) {
    warnings.push_back("ball test side condition d >= ln(2/eta) fails");
  }
  const json report = {
      {"command", "test"},     {"config", flags.resolved()},  {"body", body_to_json(body)},
      {"observation", point_to_json(X)}, {"statistic", outcome.statistic}, {"threshold", outcome.threshold},
      {"reject", outcome.reject}, {"warnings", warnings},
  };
  emit(report, a.out, out);
  return outcome.reject ? kExitReject : kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string axis, values, body, test, out;
  int d = 1;
  double n = 100.0, R = kUnset, eta = 0.1, bisect_tol = 0.02;
  long reps = 20000;
  std::uint64_t seed = 0;
};

void add_sweep_flags(Flags& f, SweepArgs& a) {
  f.add("axis", a.axis, "d | n | R")->required();
  f.add_list("values", a.values, "grid values a,b,c (strictly increasing, >= 4)")->required();
  f.add("body", a.body, "halfspace | orthant | ball | inflated-orthant, or a body JSON")->required();
  f.add("test", a.test, "halfspace | plugin | rounded | ball (default by body)");
  f.add("d", a.d, "dimension when not swept");
  f.add("n", a.n, "variance scaling when not swept");
  f.add_optional("R", a.R, "radius for ball / inflated bodies when not swept");
  f.add("eta", a.eta, "total error level; alpha = beta = eta/2");
  f.add("reps", a.reps, "Monte Carlo replicates per error estimate");
  f.add("seed", a.seed, "master seed");
  f.add("bisect-tol", a.bisect_tol, "final bracket width relative to rho_hi");
  f.add("out", a.out, "CSV path; the fit goes to the sibling .fit.json");
}

std::string fit_path(const std::string& csv) {
  const std::string ext = ".csv";
  if (csv.size() > ext.size() && csv.compare(csv.size() - ext.size(), ext.size(), ext) == 0) {
    return csv.substr(0, csv.size() - ext.size()) + ".fit.json";
  }
  return csv + ".fit.json";
}

int cmd_sweep(const Flags& flags, SweepArgs a, std::ostream& out) {
  SweepConfig cfg;
  cfg.axis = parse_sweep_axis(a.axis);
  cfg.values = parse_list(a.values, "values");
  const std::string body_text = trim(a.body);
  if (!body_text.empty() && body_text.front() == '{') {
    const json j = json::parse(body_text);
    const std::string variant = j.value("variant", "");
    if (variant == "inflated") {
      if (!j.contains("base") || j["base"].value("variant", "") != "orthant") {
        throw DomainError("sweep: only inflated orthants can be swept");
      }
      cfg.family = "inflated-orthant";
      if (!flags.given("R") && j.contains("R")) a.R = j["R"].get<double>();
      if (!flags.given("d") && j["base"].contains("d")) a.d = j["base"]["d"].get<int>();
    } else {
      cfg.family = variant;
      if (!flags.given("R") && j.contains("radius")) a.R = j["radius"].get<double>();
      if (!flags.given("d") && j.contains("d")) a.d = j["d"].get<int>();
    }
  } else {
    cfg.family = body_text;
  }
  family_body(cfg.family, 1, 1.0);  // validates the family name
  if (a.test.empty()) a.test = cfg.family == "halfspace" ? "halfspace" : cfg.family == "ball" ? "ball" : "plugin";
  cfg.test = parse_test_kind(a.test);
  cfg.d = a.d;
  cfg.n = a.n;
  cfg.R = optional_of(a.R);
  cfg.eta = a.eta;
  cfg.reps = a.reps;
  cfg.seed = a.seed;
  cfg.bisect_tol = a.bisect_tol;

  const std::vector<SweepRow> rows = rate_sweep(cfg);
  const RateFit fit = fit_loglog(rows, cfg.axis);

  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  json row_info = json::array();
  for (const SweepRow& r : rows) {
    row_info.push_back({{"rho_hat", r.rho_hat},
                        {"upper_bound", r.upper_bound},
                        {"lower_bound", r.lower_bound ? json(*r.lower_bound) : json(nullptr)},
                        {"warnings", r.warnings}});
  }
  json points = json::array();
  for (const auto& [x, y] : fit.points) points.push_back({x, y});
  json config = flags.resolved();
  config["test"] = a.test;
  config["body"] = cfg.family;
  const json fit_json = {{"command", "sweep"},    {"config", config},         {"axis", a.axis},
                         {"slope", fit.slope},     {"intercept", fit.intercept}, {"r_squared", fit.r_squared},
                         {"points", points},       {"rows", row_info}};

  if (a.out.empty()) {
    out << csv.str();
    return kExitOk;
  }
  {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + a.out + "'");
    f << csv.str();
  }
  {
    std::ofstream f(fit_path(a.out), std::ios::binary);
    if (!f) throw DomainError("cannot write '" + fit_path(a.out) + "'");
    f << fit_json.dump(2) << "\n";
  }
  out << "wrote " << rows.size() << " rows to " << a.out << "; slope " << format_double(fit.slope) << ", r^2 "
      << format_double(fit.r_squared) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct LowerArgs {
  std::string kind, out;
  int d = 0, grid = 512;
  double n = 100.0, R = kUnset, eta = 0.5;
  long reps = 0;
  std::uint64_t seed = 0;
};

void add_lower_flags(Flags& f, LowerArgs& a) {
  f.add("kind", a.kind, "two-point | orthant | inflated-orthant | ball")->required();
  f.add("d", a.d, "dimension");
  f.add("n", a.n, "variance scaling n");
  f.add_optional("R", a.R, "radius (ball, inflated-orthant)");
  f.add("eta", a.eta, "total error level");
  f.add("grid", a.grid, "moment-prior LP grid size");
  f.add("reps", a.reps, "Bayes-error witness replicates (orthant kinds; 0 skips)");
  f.add("seed", a.seed, "master seed");
  f.add("out", a.out, "also write the JSON report here");
}

double require_R(double R, const char* kind) {
  if (std::isnan(R)) throw DomainError(std::string("lowerbound ") + kind + " needs --R");
  return R;
}

int cmd_lowerbound(const Flags& flags, const LowerArgs& a, std::ostream& out) {
  json report = {{"command", "lowerbound"}, {"config", flags.resolved()}, {"kind", a.kind}};
  const double chi2_limit = 1.0 + 4.0 * (1.0 - a.eta) * (1.0 - a.eta);

  if (a.kind == "two-point") {
    const double rho = two_point_separation(a.n, a.eta);
    report["rho"] = rho;
    report["chi2"] = report_json(chi2_two_point_report(a.n, rho));
    report["chi2_limit"] = chi2_limit;
  } else if (a.kind == "ball") {
    const double R = require_R(a.R, "ball");
    const double rho = ball_lower_separation(a.n, a.d, R, a.eta);
    const double h = ball_h_from_rho(a.d, R, rho);
    const DivergenceReport div = ball_prior_divergence_report(a.n, a.d, h);
    report["rho"] = rho;
    report["h"] = h;
    report["chi2"] = report_json(div);
    report["chi2_limit"] = chi2_limit;
    report["within_limit"] = div.formula_value <= chi2_limit;
  } else if (a.kind == "orthant" || a.kind == "inflated-orthant") {
    const bool shifted = a.kind == "inflated-orthant";
    const PriorParameters p = orthant_prior_parameters(a.d, a.eta, a.n, shifted);
    const int k = shifted ? a.d - 1 : a.d;
    const MomentPriors priors = construct_moment_priors(p.M, p.b, a.grid);
    double tv_error = 0.0;
    const double tv = tv_distance_1d(priors.nu0, priors.nu1, p.sigma, &tv_error);
    const double bound = tv_bound_product(p.M, k);
    report["M"] = p.M;
    report["c"] = p.c;
    report["sigma"] = p.sigma;
    report["b"] = p.b;
    report["u"] = p.u;
    report["moment_gap"] = priors.max_moment_gap;
    report["mass_at_u"] = priors.mass_at_u;
    report["grid"] = priors.grid;
    report["tv_1d"] = tv;
    report["tv_1d_error"] = tv_error;
    report["tv_product"] = k * tv;
    report["tv_bound"] = bound;
    report["tv_within_bound"] = k * tv <= bound;
    report["eta_criterion"] = 1.0 - 0.5 * bound >= a.eta + 1.0 / 9.0 - 1e-6;
    std::optional<double> shift;
    if (shifted) {
      const double R = require_R(a.R, "inflated-orthant");
      const Radius rho = inflated_orthant_rho(a.d, a.n, R, a.eta);
      report["rho"] = rho.rho;
      report["branch"] = rho.branch;
      shift = R;
    } else {
      report["rho"] = p.rho;
      report["rho_rounded"] = p.rho_rounded;
    }
    report["priors"] = {{"nu0", prior_to_json(priors.nu0)}, {"nu1", prior_to_json(priors.nu1)}};

    if (a.reps > 0) {
      const ModelParams params(a.d, a.n);
      const ConvexBody body = shifted ? ConvexBody::inflated(ConvexBody::orthant(a.d), *shift) : ConvexBody::orthant(a.d);
      const Levels levels = Levels::split(a.eta);
      const RandomizedTest test = [&](const Point& X, double) { return plugin_test(body, params, X, levels).reject; };
      const PriorSampler prior0 = [&](Seed s) { return sample_product_prior(priors.nu0, a.d, s, shift); };
      const PriorSampler prior1 = [&](Seed s) { return sample_conditional_prior(priors.nu1, a.d, s, shift).mu; };
      const BayesErrorEstimate est = bayes_error_estimate(test, prior0, prior1, params, a.reps, a.seed);
      report["witness"] = {{"test", "plugin"},         {"type1", est.type1}, {"type2", est.type2},
                           {"total", est.total},        {"ci_radius", est.ci_radius}, {"reps", est.reps},
                           {"at_least_eta", est.total >= a.eta - est.ci_radius}};
    }
  } else {
    throw DomainError("unknown lowerbound kind '" + a.kind + "' (two-point, orthant, inflated-orthant, ball)");
  }
  emit(report, a.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string suite, out;
  std::uint64_t seed = 0;
};

int cmd_check(const Flags& flags, const CheckArgs& a, std::ostream& out) {
  const std::vector<CheckResult> results = run_check_suite(a.suite, a.seed);
  bool all = true;
  json rows = json::array();
  for (const CheckResult& r : results) {
    all = all && r.pass;
    const char* status = r.pass ? (r.expected_failure ? "PASS*" : "PASS") : "FAIL";
    out << status << std::string(7 - std::string(status).size(), ' ') << r.name << "  [" << r.detail << "]\n";
    rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"planted", r.expected_failure}});
  }
  out << (all ? "all " : "NOT all ") << results.size() << " checks passed"
      << " (PASS* = planted violation reported as expected)\n";
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw DomainError("cannot write '" + a.out + "'");
    f << json{{"command", "check"}, {"config", flags.resolved()}, {"suite", a.suite}, {"results", rows}}.dump(2)
      << "\n";
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimax separation rates in the Gaussian sequence model", "seprate"};
  app.require_subcommand(1);

  CLI::App* test = app.add_subcommand("test", "Run one test on an observation sampled from --mu");
  CLI::App* sweep = app.add_subcommand("sweep", "Empirical separation radii over a parameter grid, with a log-log fit");
  CLI::App* lower = app.add_subcommand("lowerbound", "Certified lower-bound radii and their divergence checks");
  CLI::App* check = app.add_subcommand("check", "Run a property suite and print a pass/fail table");

  TestArgs test_args;
  Flags test_flags(test);
  add_test_flags(test_flags, test_args);
  SweepArgs sweep_args;
  Flags sweep_flags(sweep);
  add_sweep_flags(sweep_flags, sweep_args);
  LowerArgs lower_args;
  Flags lower_flags(lower);
  add_lower_flags(lower_flags, lower_args);
  CheckArgs check_args;
  Flags check_flags(check);
  check_flags.add("suite", check_args.suite, "concentration | geometry | divergence | rounding")->required();
  check_flags.add("seed", check_args.seed, "master seed");
  check_flags.add("out", check_args.out, "also write the results as JSON");

  // Required flags may come from --config, so requirement is checked after merging.
  std::vector<std::pair<Flags*, std::vector<CLI::Option*>>> deferred;
  for (auto [sub, flags] : {std::pair{test, &test_flags}, std::pair{sweep, &sweep_flags},
                            std::pair{lower, &lower_flags}, std::pair{check, &check_flags}}) {
    std::vector<CLI::Option*> required;
    for (CLI::Option* opt : sub->get_options()) {
      if (opt->get_required()) {
        opt->required(false);
        required.push_back(opt);
      }
    }
    deferred.emplace_back(flags, required);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "seprate: error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    for (auto& [flags, required] : deferred) {
      const bool active = (flags == &test_flags && test->parsed()) || (flags == &sweep_flags && sweep->parsed()) ||
                          (flags == &lower_flags && lower->parsed()) || (flags == &check_flags && check->parsed());
      if (!active) continue;
      flags->apply_config();
      for (CLI::Option* opt : required) {
        const std::string name = opt->get_name().substr(2);
        if (!flags->given(name)) throw DomainError("--" + name + " is required");
      }
    }
    if (test->parsed()) return cmd_test(test_flags, test_args, out);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_args, out);
    if (lower->parsed()) return cmd_lowerbound(lower_flags, lower_args, out);
    if (check->parsed()) return cmd_check(check_flags, check_args, out);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "seprate: error: " << msg << "\n";
    return kExitError;
  }
  err << "seprate: error: no command given\n";
  return kExitError;
}

}  // namespace seprate
