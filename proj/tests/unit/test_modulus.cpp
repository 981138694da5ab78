#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "support/generators.hpp"
#include "support/modulus_oracle.hpp"
#include "wepkit/error.hpp"
#include "wepkit/modulus.hpp"

using namespace wep;
using wep::testing::brute_force;
using wep::testing::StepPath;

TEST(Modulus, RejectsBadDelta) {
  const auto p = SamplePath::from_points(std::make_shared<const Distribution>(Distribution::uniform()),
                                         std::make_shared<const WeightFunction>(WeightFunction::constant(1.0)), 1,
                                         {0.5});
  EXPECT_THROW(modulus(p, 0.0), DomainError);
  EXPECT_THROW(modulus(p, 1.5), DomainError);
}

// Cuts off the jump grid beat any jump-only partition here.
TEST(Modulus, GapCutBeatsJumpCuts) {
  // Four atoms of mass 1/4, all sampled: jumps +1/2 at each atom with n = 4.
  const auto d = std::make_shared<const Distribution>(
      Distribution({}, {{0.1, 0.25}, {0.2, 0.25}, {0.8, 0.25}, {0.9, 0.25}}));
  const auto f = std::make_shared<const WeightFunction>(WeightFunction::constant(1.0));
  const auto p = SamplePath::from_points(d, f, 4, {0.1, 0.1, 0.2, 0.2, 0.8, 0.8, 0.9, 0.9});
  const auto r = modulus(p, 0.45);
  // Blocks [0, 0.5), [0.5, 1] each see two jumps of 1/2.
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(ModulusProperty, MatchesExhaustiveSearchOnStepPaths) {
  Engine eng(808);
  for (int c = 0; c < 200; ++c) {
    const auto k = wep::testing::random_step_case(eng);
    const auto& path = k.path;
    const auto& w = k.oracle;
    const double delta = wep::testing::unif(eng, 0.06, 0.6);
    const double expect = brute_force(w, delta);
    const auto got = modulus(path, delta);
    EXPECT_NEAR(got.value, expect, 1e-9) << "case " << c << " delta " << delta;
    // The reported partition is feasible.
    ASSERT_GE(got.partition.size(), 2u);
    EXPECT_EQ(got.partition.front(), 0.0);
    EXPECT_EQ(got.partition.back(), 1.0);
    for (std::size_t i = 1; i < got.partition.size(); ++i)
      EXPECT_GE(got.partition[i] - got.partition[i - 1], delta - 1e-12);
  }
}

// w'(delta) can only grow with delta: every partition feasible for a larger
// spacing is feasible for a smaller one.
TEST(ModulusProperty, NondecreasingInDelta) {
  Engine eng(909);
  for (int c = 0; c < 30; ++c) {
    const auto d = std::make_shared<const Distribution>(wep::testing::random_distribution(eng));
    const auto f = std::make_shared<const WeightFunction>(wep::testing::random_weight(eng));
    const auto path = SamplePath::simulate(d, f, 60, SamplingMode::fixed_n, eng);
    // Cut points are restricted to a candidate set, so a smaller delta may
    // overshoot by at most its drift bound.
    double prev = -1.0, prev_drift = 0.0;
    for (double delta : {0.02, 0.05, 0.1, 0.2, 0.4}) {
      const auto r = modulus(path, delta);
      EXPECT_GE(r.value + prev_drift + 1e-12, prev) << delta;
      prev = r.value;
      prev_drift = r.drift_bound;
    }
  }
}

TEST(Modulus, UniformBridgeIsSmallForTinyDelta) {
  const auto d = std::make_shared<const Distribution>(Distribution::uniform());
  const auto f = std::make_shared<const WeightFunction>(WeightFunction::constant(1.0));
  const auto path = SamplePath::simulate(d, f, 2000, SamplingMode::fixed_n, 21);
  const auto small = modulus(path, 0.01);
  const auto large = modulus(path, 0.5);
  EXPECT_LE(small.value, large.value + small.drift_bound);
  EXPECT_GT(large.value, 0.0);
}
