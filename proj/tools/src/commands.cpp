#include "commands.hpp"

#include <cmath>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>

#include "wepkit/error.hpp"
#include "wepkit/hypothesis.hpp"
#include "wepkit/json_io.hpp"
#include "wepkit/limit.hpp"
#include "wepkit/partition.hpp"
#include "wepkit/poisson.hpp"
#include "wepkit/sample_path.hpp"
#include "wepkit/verify.hpp"

namespace wep::cli {

namespace {

using io::Reader;

struct Schema {
  std::set<std::string> keys;
  bool needs_seed;
};

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> s = {
      {"simulate", {{"seed", "distribution", "weight", "n", "mode"}, true}},
      {"limit-cov", {{"seed", "distribution", "weight", "grid"}, false}},
      {"limit-sample", {{"seed", "distribution", "weight", "grid", "count"}, true}},
      {"cov-test", {{"seed", "distribution", "weight", "n", "replicates", "grid", "mode", "threshold"}, true}},
      {"fdd-test", {{"seed", "distribution", "weight", "n", "replicates", "grid", "threshold"}, true}},
      {"hyp-check", {{"seed", "distribution", "weight", "bound", "depth", "fit"}, false}},
      {"tightness", {{"seed", "distribution", "weight", "n", "deltas", "epsilon", "replicates"}, true}},
      {"poisson-tools",
       {{"seed", "distribution", "weight", "rates", "gamma_points", "gamma_max_n", "partition_thresholds",
         "maximal"},
        false}},
  };
  return s;
}

SamplingMode parse_mode(const Reader& r) {
  if (!r.has("mode")) return SamplingMode::fixed_n;
  const auto m = r.string("mode");
  if (m == "fixed-n") return SamplingMode::fixed_n;
  if (m == "poissonized") return SamplingMode::poissonized;
  throw ConfigError("cli::config", r.field("mode") + ": expected \"fixed-n\" or \"poissonized\"");
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<std::size_t> counts(const json& j, const std::string& field) {
  std::vector<std::size_t> out;
  const auto list = j.is_array() ? j : json::array({j});
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_number_integer() || list[i].get<long long>() < 1)
      throw ConfigError("cli::config", field + "[" + std::to_string(i) + "]: expected a positive integer");
    out.push_back(list[i].get<std::size_t>());
  }
  return out;
}

struct Common {
  std::shared_ptr<const Distribution> dist;
  std::shared_ptr<const WeightFunction> weight;
  std::uint64_t seed = 0;
};

Common common(const json& cfg, bool need_weight = true) {
  Reader r(cfg, "config");
  Common c;
  c.dist = std::make_shared<const Distribution>(
      r.has("distribution") ? io::parse_distribution(r.object("distribution"), "config.distribution")
                            : Distribution::uniform());
  if (need_weight || r.has("weight"))
    c.weight = std::make_shared<const WeightFunction>(io::parse_weight(r.object("weight"), "config.weight"));
  c.seed = r.count("seed", 0);
  return c;
}

unsigned workers_of(const Invocation& inv) { return std::max(1u, inv.workers); }

Outcome simulate(const Invocation& inv) {
  const auto c = common(inv.config);
  Reader r(inv.config, "config");
  const auto n = r.count("n");
  const auto path = SamplePath::simulate(c.dist, c.weight, n, parse_mode(r), c.seed);
  Outcome out;
  out.verdict = "ok";
  double sup = 0.0;
  for (double x : path.jump_points()) {
    sup = std::max(sup, std::abs(path.value(Component::y, x)));
    sup = std::max(sup, std::abs(path.left_limit(Component::y, x)));
  }
  out.metrics = {{"points", path.size()},
                 {"z_at_1", path.evaluate_z(1.0)},
                 {"y_at_1", path.evaluate_y(1.0)},
                 {"sup_abs_y_at_jumps", sup}};
  std::string csv = "x_sorted,f_value,prefix_sum\n";
  for (std::size_t i = 0; i < path.size(); ++i)
    csv += num(path.values()[i]) + "," + num(path.weights()[i]) + "," + num(path.prefix()[i + 1]) + "\n";
  out.tables.push_back({"simulate.csv", std::move(csv)});
  return out;
}

std::string matrix_csv(const std::vector<double>& grid, const Matrix& m) {
  std::string csv = "t";
  for (double g : grid) csv += "," + num(g);
  csv += "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    csv += num(grid[i]);
    for (std::size_t j = 0; j < m.cols(); ++j) csv += "," + num(m(i, j));
    csv += "\n";
  }
  return csv;
}

Outcome limit_cov(const Invocation& inv) {
  const auto c = common(inv.config);
  Reader r(inv.config, "config");
  const auto model = build_matrix(*c.dist, *c.weight, r.numbers("grid"), workers_of(inv));
  Outcome out;
  out.verdict = "ok";
  out.metrics = {{"grid", model.grid}, {"sigma", io::to_json(model.sigma)}, {"jitter", model.jitter}};
  out.tables.push_back({"covariance.csv", matrix_csv(model.grid, model.sigma)});
  return out;
}

Outcome limit_sample(const Invocation& inv) {
  const auto c = common(inv.config);
  Reader r(inv.config, "config");
  const auto model = build_matrix(*c.dist, *c.weight, r.numbers("grid"), workers_of(inv));
  const auto count = r.count("count");
  if (count == 0) throw ConfigError("cli::config", "config.count: must be >= 1");
  const auto samples = sample_limit_paths(model, count, c.seed, workers_of(inv));
  const auto cmp = compare_sample_cov(samples, model.sigma);
  Outcome out;
  out.verdict = cmp.pass ? "pass" : "fail";
  out.code = cmp.pass ? kOk : kStatFail;
  out.metrics = {{"count", count}, {"jitter", model.jitter}, {"sigma", io::to_json(model.sigma)},
                 {"comparison", io::to_json(cmp)}};
  std::string csv;
  for (std::size_t i = 0; i < model.grid.size(); ++i) csv += (i ? "," : "") + num(model.grid[i]);
  csv += "\n";
  for (const auto& x : samples) {
    for (std::size_t i = 0; i < x.size(); ++i) csv += (i ? "," : "") + num(x[i]);
    csv += "\n";
  }
  out.tables.push_back({"limit_samples.csv", std::move(csv)});
  return out;
}

Outcome cov_test(const Invocation& inv) {
  const auto c = common(inv.config);
  Reader r(inv.config, "config");
  const auto grid = r.numbers("grid");
  const auto mode = parse_mode(r);
  const auto est = mc_covariance(*c.dist, *c.weight, r.count("n"), r.count("replicates"), grid, mode, c.seed,
                                 workers_of(inv));
  const auto model = mode == SamplingMode::fixed_n ? build_matrix(*c.dist, *c.weight, grid, workers_of(inv))
                                                   : build_poissonized_matrix(*c.dist, *c.weight, grid);
  const auto cmp = compare_cov(est, model, r.number("threshold", kCovZThreshold));
  Outcome out;
  out.verdict = cmp.pass ? "pass" : "fail";
  out.code = cmp.pass ? kOk : kStatFail;
  out.metrics = {{"estimate", io::to_json(est)}, {"theory", io::to_json(model.sigma)}, {"comparison", io::to_json(cmp)}};
  std::string csv = "i,j,s,t,empirical,theory,se,z\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j)
      csv += std::to_string(i) + "," + std::to_string(j) + "," + num(grid[i]) + "," + num(grid[j]) + "," +
             num(est.cov(i, j)) + "," + num(model.sigma(i, j)) + "," + num(est.se(i, j)) + "," + num(cmp.z(i, j)) +
             "\n";
  out.tables.push_back({"cov_test.csv", std::move(csv)});
  return out;
}

Outcome fdd_test(const Invocation& inv) {
  const auto c = common(inv.config);
  Reader r(inv.config, "config");
  const auto grid = r.numbers("grid");
  const auto direct = build_matrix(*c.dist, *c.weight, grid, workers_of(inv));
  const auto inc = build_increment_matrix(*c.dist, *c.weight, grid);
  const double consistency = max_abs_diff(direct.sigma, inc.cumulative());
  const auto est = mc_covariance(*c.dist, *c.weight, r.count("n"), r.count("replicates"), grid,
                                 SamplingMode::fixed_n, c.seed, workers_of(inv));
  // Increments of each replicate.
  Matrix diffs = est.values;
  for (std::size_t i = 0; i < diffs.rows(); ++i)
    for (std::size_t j = diffs.cols(); j-- > 1;) diffs(i, j) -= diffs(i, j - 1);
  const auto inc_est = covariance_with_se(diffs);
  McEstimate inc_view = est;
  inc_view.cov = inc_est.cov;
  inc_view.se = inc_est.se;
  const auto cmp = compare_cov(inc_view, inc.increment_cov, r.number("threshold", kCovZThreshold));

  json normality = json::array();
  bool normal_ok = true;
  if (est.replicates >= 1000) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      std::vector<double> col(est.replicates);
      for (std::size_t i = 0; i < est.replicates; ++i) col[i] = est.values(i, k);
      const auto rep = marginal_normality(col, direct.sigma(k, k));
      normal_ok = normal_ok && rep.pass;
      auto j = io::to_json(rep);
      j["t"] = grid[k];
      normality.push_back(j);
    }
  }
  const bool pass = consistency <= 1e-10 && cmp.pass && normal_ok;
  Outcome out;
  out.verdict = pass ? "pass" : "fail";
  out.code = pass ? kOk : kStatFail;
  out.metrics = {{"consistency_max_abs_diff", consistency},
                 {"increment_cov", io::to_json(inc.increment_cov)},
                 {"g_cov", io::to_json(inc.g_cov)},
                 {"increment_comparison", io::to_json(cmp)},
                 {"normality", normality}};
  return out;
}

Outcome hyp_check(const Invocation& inv) {
  const auto c = common(inv.config);
  Reader r(inv.config, "config");
  const int depth = static_cast<int>(r.count("depth", 12));
  if (depth > kMaxScanDepth)
    throw ConfigError("cli::config", "config.depth: at most " + std::to_string(kMaxScanDepth));
  const auto bound = r.has("bound") ? io::parse_bound(r.object("bound"), "config.bound") : BoundFunction::linear(1.0);
  Outcome out;
  if (r.boolean("fit", false)) {
    const auto fit = fit_constant(*c.dist, *c.weight, bound, depth, workers_of(inv));
    out.verdict = fit.certifiable ? "pass" : "not-certifiable";
    out.code = fit.certifiable ? kOk : kStatFail;
    out.metrics = {{"fit", io::to_json(fit)}};
    return out;
  }
  const auto rep = scan_bound(*c.dist, *c.weight, bound, depth, workers_of(inv));
  out.verdict = !rep.certifiable ? "not-certifiable" : to_string(rep.verdict);
  out.code = rep.verdict == Verdict::pass && rep.certifiable ? kOk : kStatFail;
  out.metrics = {{"scan", io::to_json(rep)}};
  return out;
}

Outcome tightness(const Invocation& inv) {
  const auto c = common(inv.config);
  Reader r(inv.config, "config");
  if (!r.has("n")) throw ConfigError("cli::config", "config.n: missing required field");
  const auto ns = counts(inv.config.at("n"), "config.n");
  const auto table = tightness_probe(*c.dist, *c.weight, ns, r.numbers("deltas"), r.number("epsilon"),
                                     r.count("replicates"), c.seed, workers_of(inv));
  // Non-increasing as delta shrinks, within 2 SE.
  bool decays = true;
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = 1; j < table.deltas.size(); ++j)
      if (table.prob[i][j] > table.prob[i][j - 1] + 2.0 * std::hypot(table.se[i][j], table.se[i][j - 1]))
        decays = false;
  Outcome out;
  out.verdict = decays ? "pass" : "fail";
  out.code = decays ? kOk : kStatFail;
  out.metrics = {{"table", io::to_json(table)}, {"non_increasing_in_delta", decays}};
  std::string csv = "n,delta,probability,se\n";
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = 0; j < table.deltas.size(); ++j)
      csv += std::to_string(ns[i]) + "," + num(table.deltas[j]) + "," + num(table.prob[i][j]) + "," +
             num(table.se[i][j]) + "\n";
  out.tables.push_back({"tightness.csv", std::move(csv)});
  return out;
}

Outcome poisson_tools(const Invocation& inv) {
  const auto c = common(inv.config, false);
  Reader r(inv.config, "config");
  Outcome out;
  bool pass = true;

  const auto rates = r.has("rates") ? r.numbers("rates") : std::vector<double>{1.0, 10.0, 100.0};
  std::size_t checked = 0, violations = 0;
  for (double b : rates) {
    const int span = static_cast<int>(std::ceil(10.0 * std::sqrt(b)));
    for (int k = 0; k <= span; ++k) {
      const double up = b + k;
      ++checked;
      if (chernoff_upper(b, up) < poisson_upper_tail(b, up)) ++violations;
      const double lo = b - k;
      if (lo >= 0.0) {
        ++checked;
        if (chernoff_lower(b, lo) < poisson_lower_tail(b, lo)) ++violations;
      }
    }
  }
  pass = pass && violations == 0;
  out.metrics["chernoff"] = {{"rates", rates}, {"checked", checked}, {"violations", violations}};

  json gammas = json::object();
  for (auto n : counts(r.has("gamma_points") ? inv.config.at("gamma_points") : json::array({1, 100, 1000, 10000}),
                       "config.gamma_points"))
    gammas[std::to_string(n)] = gamma_estimate(*c.dist, n);
  const auto max_n = r.count("gamma_max_n", 10000);
  double sup = 0.0;
  std::uint64_t argsup = 1;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    const double g = gamma_estimate(*c.dist, n);
    if (g > sup) sup = g, argsup = n;
  }
  out.metrics["gamma"] = {{"values", gammas}, {"sweep_max_n", max_n}, {"sup", sup}, {"argsup", argsup}};

  json parts = json::array();
  for (double a : r.has("partition_thresholds") ? r.numbers("partition_thresholds") : std::vector<double>{0.05, 0.1, 0.2}) {
    const auto p = partition_by_mass(*c.dist, a);
    const auto bad = check_partition(*c.dist, p);
    pass = pass && bad.empty();
    auto j = io::to_json(p);
    j["violations"] = bad;
    parts.push_back(j);
  }
  out.metrics["partition"] = parts;

  if (r.has("maximal")) {
    if (!c.weight) throw ConfigError("cli::config", "config.weight: required with config.maximal");
    Reader m(r.object("maximal"), "config.maximal");
    m.only({"interval", "n", "L", "x", "replicates"});
    const auto iv = m.numbers("interval");
    if (iv.size() != 2) throw ConfigError("cli::config", m.field("interval") + ": expected [lo, hi]");
    const auto rep = maximal_inequality_probe(*c.dist, *c.weight, Interval(iv[0], iv[1]), m.count("n"), m.count("L"),
                                              m.number("x"), m.count("replicates"), c.seed, workers_of(inv));
    pass = pass && rep.holds;
    out.metrics["maximal"] = io::to_json(rep);
  }
  out.verdict = pass ? "pass" : "fail";
  out.code = pass ? kOk : kStatFail;
  return out;
}

} // namespace

bool known_command(const std::string& command) { return schemas().count(command) > 0; }

const std::map<std::string, std::string>& command_help() {
  static const std::map<std::string, std::string> h = {
      {"simulate", "simulate one path; CSV of sorted points, weights and prefix sums"},
      {"limit-cov", "limit covariance matrix on a grid"},
      {"limit-sample", "sample the Gaussian limit on a grid and check its covariance"},
      {"cov-test", "Monte Carlo covariance of Y_n against the limit"},
      {"fdd-test", "increment-form consistency, increment covariance and marginal normality"},
      {"hyp-check", "scan the conditional-variance bound over dyadic intervals"},
      {"tightness", "exceedance probabilities of the modulus by n and delta"},
      {"poisson-tools", "Chernoff bounds, gamma estimates, mass partitions, maximal inequality"},
  };
  return h;
}

json resolve(const std::string& command, json config, std::optional<std::uint64_t> seed_flag) {
  const auto it = schemas().find(command);
  if (it == schemas().end()) throw ConfigError("cli::run", "unknown command '" + command + "'");
  if (!config.is_object()) throw ConfigError("cli::config", "config: expected a JSON object");
  for (const auto& [key, _] : config.items())
    if (!it->second.keys.count(key)) throw ConfigError("cli::config", "config." + key + ": unknown field");
  if (seed_flag) config["seed"] = *seed_flag;
  const bool needs_seed = it->second.needs_seed || (command == "poisson-tools" && config.contains("maximal"));
  if (needs_seed && !config.contains("seed"))
    throw ConfigError("cli::config", "config.seed: missing; seeds are mandatory (config or --seed)");
  if (config.contains("seed")) Reader(config, "config").count("seed");
  // Parse the model pieces now so errors surface before any computation.
  common(config, command != "poisson-tools");
  return config;
}

Outcome run(const Invocation& inv) {
  static const std::map<std::string, Outcome (*)(const Invocation&)> table = {
      {"simulate", simulate},   {"limit-cov", limit_cov}, {"limit-sample", limit_sample},
      {"cov-test", cov_test},   {"fdd-test", fdd_test},   {"hyp-check", hyp_check},
      {"tightness", tightness}, {"poisson-tools", poisson_tools},
  };
  return table.at(inv.command)(inv);
}

} // namespace wep::cli
