#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "wepkit/distribution.hpp"
#include "wepkit/hypothesis.hpp"
#include "wepkit/limit.hpp"
#include "wepkit/matrix.hpp"
#include "wepkit/partition.hpp"
#include "wepkit/verify.hpp"
#include "wepkit/weight.hpp"

namespace wep::io {

using json = nlohmann::json;

//! Every parser rejects unknown keys and reports the offending field as a
//! dotted path rooted at `path`, via ConfigError.
Distribution parse_distribution(const json& j, const std::string& path = "distribution");
WeightFunction parse_weight(const json& j, const std::string& path = "weight");
BoundFunction parse_bound(const json& j, const std::string& path = "bound");

json to_json(const Distribution& d);
json to_json(const WeightFunction& f);
json to_json(const BoundFunction& h);
json to_json(const Matrix& m);
json to_json(const Interval& iv);
json to_json(const HypothesisReport& r);
json to_json(const FitResult& r);
json to_json(const McEstimate& e); //!< without the per-replicate values
json to_json(const CovComparison& c);
json to_json(const NormalityReport& r);
json to_json(const MaximalReport& r);
json to_json(const TightnessTable& t);
json to_json(const MassPartition& p);

//! Small helpers for reading typed config fields.
class Reader {
public:
  Reader(const json& j, std::string path);

  bool has(const std::string& key) const { return j_.contains(key); }
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::uint64_t count(const std::string& key) const;
  std::uint64_t count(const std::string& key, std::uint64_t fallback) const;
  std::string string(const std::string& key) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  const json& object(const std::string& key) const;
  std::string field(const std::string& key) const { return path_ + "." + key; }
  //! Throws for any key outside `allowed`.
  void only(std::initializer_list<const char*> allowed) const;

private:
  const json& at(const std::string& key) const;
  const json& j_;
  std::string path_;
};

} // namespace wep::io
