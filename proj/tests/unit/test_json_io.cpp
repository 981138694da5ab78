#include <gtest/gtest.h>

#include "wepkit/error.hpp"
#include "wepkit/json_io.hpp"

using namespace wep;
using io::json;

namespace {

std::string message_of(const json& j) {
  try {
    io::parse_distribution(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST(JsonIo, DistributionRoundTrip) {
  const auto j = json::parse(R"({"continuous":[{"family":"uniform","lo":0,"hi":1,"weight":0.5},
      {"family":"power","beta":1,"hi":0.5,"weight":0.25}],"atoms":[{"at":0.5,"mass":0.25}]})");
  const auto d = io::parse_distribution(j);
  EXPECT_EQ(d.parts().size(), 2u);
  EXPECT_EQ(d.atoms().size(), 1u);
  const auto again = io::parse_distribution(io::to_json(d));
  EXPECT_EQ(io::to_json(again), io::to_json(d));
}

TEST(JsonIo, FieldLevelErrors) {
  EXPECT_NE(message_of(json::parse(R"({"continuous":[{"family":"uniform","weight":"x"}]})"))
                .find("distribution.continuous[0].weight"),
            std::string::npos);
  EXPECT_NE(message_of(json::parse(R"({"atoms":[{"at":0.5,"mass":1,"extra":1}]})")).find("atoms[0].extra"),
            std::string::npos);
  EXPECT_NE(message_of(json::parse(R"({"continuous":[{"family":"beta"}]})")).find("family"), std::string::npos);
  EXPECT_NE(message_of(json::parse(R"({"atoms":[{"at":0.5,"mass":0.5}]})")).find("sum to"), std::string::npos);
  EXPECT_NE(message_of(json::parse(R"({"continous":[]})")).find("unknown field"), std::string::npos);
}

TEST(JsonIo, Weights) {
  EXPECT_EQ(io::parse_weight(json::parse(R"({"family":"power","alpha":0.25})")).alpha(), 0.25);
  EXPECT_EQ(io::parse_weight(json::parse(R"({"family":"constant","value":2})"))(0.3), 2.0);
  EXPECT_THROW(io::parse_weight(json::parse(R"({"family":"power"})")), ConfigError);
  EXPECT_THROW(io::parse_weight(json::parse(R"({"family":"table","knots":[0,0.4],"values":[1]})")), ConfigError);
  const auto w = io::parse_weight(json::parse(R"({"family":"table","knots":[0,0.5,1],"values":[1,2]})"));
  EXPECT_EQ(io::to_json(io::parse_weight(io::to_json(w))), io::to_json(w));
}

TEST(JsonIo, Bounds) {
  EXPECT_EQ(io::parse_bound(json::parse(R"({"family":"linear","coef":4})"))(0.5), 2.0);
  EXPECT_THROW(io::parse_bound(json::parse(R"({"family":"power","coef":1,"exponent":2})")), ConfigError);
}

TEST(JsonIo, NonFiniteValuesBecomeStrings) {
  Matrix m(1, 2);
  m(0, 0) = HUGE_VAL;
  m(0, 1) = 1.5;
  EXPECT_EQ(io::to_json(m).dump(), R"([["inf",1.5]])");
}
