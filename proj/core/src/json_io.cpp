#include "wepkit/json_io.hpp"

#include <algorithm>
#include <cmath>

#include "wepkit/error.hpp"

namespace wep::io {

namespace {

constexpr auto kWhere = "cli::config";

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(kWhere, field + ": " + what);
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

} // namespace

Reader::Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) fail(path_, "expected an object");
}

const json& Reader::at(const std::string& key) const {
  if (!j_.contains(key)) fail(field(key), "missing required field");
  return j_.at(key);
}

double Reader::number(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_number()) fail(field(key), "expected a number");
  return v.get<double>();
}

double Reader::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::uint64_t Reader::count(const std::string& key) const {
  const auto& v = at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  fail(field(key), "expected a non-negative integer");
}

std::uint64_t Reader::count(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? count(key) : fallback;
}

std::string Reader::string(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_string()) fail(field(key), "expected a string");
  return v.get<std::string>();
}

bool Reader::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (!v.is_boolean()) fail(field(key), "expected true or false");
  return v.get<bool>();
}

std::vector<double> Reader::numbers(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_array()) fail(field(key), "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(field(key) + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

const json& Reader::object(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_object()) fail(field(key), "expected an object");
  return v;
}

void Reader::only(std::initializer_list<const char*> allowed) const {
  for (const auto& [key, _] : j_.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(field(key), "unknown field");
}

Distribution parse_distribution(const json& j, const std::string& path) {
  Reader r(j, path);
  r.only({"continuous", "atoms"});
  std::vector<ContinuousPart> parts;
  std::vector<Atom> atoms;
  if (r.has("continuous")) {
    const auto& arr = j.at("continuous");
    if (!arr.is_array()) fail(r.field("continuous"), "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Reader p(arr[i], r.field("continuous") + "[" + std::to_string(i) + "]");
      const auto fam = p.string("family");
      if (fam == "uniform") {
        p.only({"family", "lo", "hi", "weight"});
        parts.push_back(ContinuousPart::uniform(p.number("lo", 0.0), p.number("hi", 1.0), p.number("weight", 1.0)));
      } else if (fam == "power") {
        p.only({"family", "beta", "hi", "weight"});
        parts.push_back(ContinuousPart::power(p.number("beta"), p.number("hi", 1.0), p.number("weight", 1.0)));
      } else {
        fail(p.field("family"), "unknown family '" + fam + "' (uniform, power)");
      }
    }
  }
  if (r.has("atoms")) {
    const auto& arr = j.at("atoms");
    if (!arr.is_array()) fail(r.field("atoms"), "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Reader a(arr[i], r.field("atoms") + "[" + std::to_string(i) + "]");
      a.only({"at", "mass"});
      atoms.push_back({a.number("at"), a.number("mass")});
    }
  }
  try {
    return Distribution(std::move(parts), std::move(atoms));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

WeightFunction parse_weight(const json& j, const std::string& path) {
  Reader r(j, path);
  const auto fam = r.string("family");
  try {
    if (fam == "constant") {
      r.only({"family", "value"});
      return WeightFunction::constant(r.number("value"));
    }
    if (fam == "power") {
      r.only({"family", "alpha"});
      return WeightFunction::power(r.number("alpha"));
    }
    if (fam == "polynomial") {
      r.only({"family", "coefficients"});
      return WeightFunction::polynomial(r.numbers("coefficients"));
    }
    if (fam == "cosine") {
      r.only({"family"});
      return WeightFunction::cosine();
    }
    if (fam == "sine") {
      r.only({"family"});
      return WeightFunction::sine();
    }
    if (fam == "table") {
      r.only({"family", "knots", "values"});
      return WeightFunction::table(r.numbers("knots"), r.numbers("values"));
    }
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(r.field("family"), "unknown family '" + fam + "' (constant, power, polynomial, cosine, sine, table)");
}

BoundFunction parse_bound(const json& j, const std::string& path) {
  Reader r(j, path);
  const auto fam = r.string("family");
  try {
    if (fam == "linear") {
      r.only({"family", "coef"});
      return BoundFunction::linear(r.number("coef", 1.0));
    }
    if (fam == "power") {
      r.only({"family", "coef", "exponent"});
      return BoundFunction::power(r.number("coef", 1.0), r.number("exponent"));
    }
    if (fam == "table") {
      r.only({"family", "knots", "values"});
      return BoundFunction::table(r.numbers("knots"), r.numbers("values"));
    }
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(r.field("family"), "unknown family '" + fam + "' (linear, power, table)");
}

json to_json(const Distribution& d) {
  json parts = json::array(), atoms = json::array();
  for (const auto& p : d.parts()) {
    if (p.family == PartFamily::uniform)
      parts.push_back({{"family", "uniform"}, {"lo", p.lo}, {"hi", p.hi}, {"weight", p.weight}});
    else
      parts.push_back({{"family", "power"}, {"beta", p.beta}, {"hi", p.hi}, {"weight", p.weight}});
  }
  for (const auto& a : d.atoms()) atoms.push_back({{"at", a.at}, {"mass", a.mass}});
  return {{"continuous", parts}, {"atoms", atoms}};
}

json to_json(const WeightFunction& f) {
  using F = WeightFunction::Family;
  switch (f.family()) {
  case F::constant:
    return {{"family", "constant"}, {"value", f.coefficients()[0]}};
  case F::power:
    return {{"family", "power"}, {"alpha", f.alpha()}};
  case F::polynomial:
    return {{"family", "polynomial"}, {"coefficients", f.coefficients()}};
  case F::cosine:
    return {{"family", "cosine"}};
  case F::sine:
    return {{"family", "sine"}};
  case F::table:
    return {{"family", "table"}, {"knots", f.knots()}, {"values", f.values()}};
  }
  return {};
}

json to_json(const BoundFunction& h) {
  using F = BoundFunction::Family;
  switch (h.family()) {
  case F::linear:
    return {{"family", "linear"}, {"coef", h.coef()}};
  case F::power:
    return {{"family", "power"}, {"coef", h.coef()}, {"exponent", h.exponent()}};
  case F::table:
    return {{"family", "table"}, {"knots", h.knots()}, {"values", h.values()}};
  }
  return {};
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(finite_or_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Interval& iv) { return json::array({iv.lower, iv.upper}); }

json to_json(const HypothesisReport& r) {
  json j = {{"depth", r.depth},
            {"intervals_scanned", r.intervals_scanned},
            {"worst_interval", to_json(r.worst_interval)},
            {"worst_ratio", finite_or_string(r.worst_ratio)},
            {"depth_profile", json::array()},
            {"divergent", r.divergent},
            {"limit_zero_check", r.limit_zero.pass},
            {"ratio_bounded_check", {{"pass", r.ratio_bounded.pass}, {"sup", finite_or_string(r.ratio_bounded.sup)}}},
            {"certifiable", r.certifiable},
            {"verdict", to_string(r.verdict)}};
  for (double v : r.depth_profile) j["depth_profile"].push_back(finite_or_string(v));
  if (r.divergent_interval) j["divergent_interval"] = to_json(*r.divergent_interval);
  return j;
}

json to_json(const FitResult& r) {
  json j = {{"certifiable", r.certifiable}, {"constant", finite_or_string(r.constant)}, {"reason", r.reason}};
  if (r.bound) j["bound"] = to_json(*r.bound);
  j["depth_profile"] = json::array();
  for (double v : r.depth_profile) j["depth_profile"].push_back(finite_or_string(v));
  return j;
}

json to_json(const McEstimate& e) {
  return {{"grid", e.grid},
          {"n", e.n},
          {"replicates", e.replicates},
          {"mode", e.mode == SamplingMode::fixed_n ? "fixed-n" : "poissonized"},
          {"covariance", to_json(e.cov)},
          {"standard_error", to_json(e.se)}};
}

json to_json(const CovComparison& c) {
  return {{"z", to_json(c.z)},
          {"max_abs_z", finite_or_string(c.max_abs_z)},
          {"max_abs_diff", c.max_abs_diff},
          {"threshold", c.threshold},
          {"pass", c.pass}};
}

json to_json(const NormalityReport& r) {
  return {{"count", r.count},           {"skewness", r.skewness}, {"skewness_z", r.skewness_z},
          {"excess_kurtosis", r.excess_kurtosis}, {"kurtosis_z", r.kurtosis_z}, {"ks", r.ks},
          {"ks_scaled", r.ks_scaled},   {"pass", r.pass},         {"reason", r.reason}};
}

json to_json(const MaximalReport& r) {
  return {{"lhs", r.lhs}, {"lhs_se", r.lhs_se}, {"rhs", r.rhs},           {"rhs_se", r.rhs_se},
          {"c", r.c},     {"variance", r.variance}, {"degenerate", r.degenerate}, {"holds", r.holds}};
}

json to_json(const TightnessTable& t) {
  return {{"n", t.ns},         {"delta", t.deltas},          {"epsilon", t.epsilon},
          {"replicates", t.replicates}, {"probability", t.prob}, {"standard_error", t.se}};
}

json to_json(const MassPartition& p) {
  json heavy = json::array(), pieces = json::array();
  for (const auto& a : p.heavy_atoms) heavy.push_back({{"at", a.at}, {"mass", a.mass}});
  for (const auto& pc : p.pieces)
    pieces.push_back({{"lo", pc.lo},
                      {"hi", pc.hi},
                      {"lo_closed", pc.lo_closed},
                      {"hi_closed", pc.hi_closed},
                      {"mass", pc.mass},
                      {"origin", pc.origin},
                      {"split", pc.split}});
  return {{"threshold", p.threshold}, {"median", p.median}, {"heavy_atoms", heavy}, {"pieces", pieces}};
}

} // namespace wep::io
