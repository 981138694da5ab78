#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "support/generators.hpp"
#include "wepkit/error.hpp"
#include "wepkit/moments.hpp"
#include "wepkit/sample_path.hpp"

using namespace wep;

namespace {

std::shared_ptr<const Distribution> share(Distribution d) { return std::make_shared<const Distribution>(std::move(d)); }
std::shared_ptr<const WeightFunction> share(WeightFunction f) {
  return std::make_shared<const WeightFunction>(std::move(f));
}

} // namespace

TEST(SamplePath, EvaluateMatchesDirectSum) {
  const auto d = share(Distribution::uniform());
  const auto f = share(WeightFunction::polynomial({1.0, 2.0}));
  const auto p = SamplePath::simulate(d, f, 500, SamplingMode::fixed_n, 9);
  ASSERT_EQ(p.size(), 500u);
  for (double t : {0.0, 0.1, 0.5, 0.77, 1.0}) {
    double s = 0.0;
    for (double x : p.values())
      if (x <= t) s += 1.0 + 2.0 * x;
    EXPECT_NEAR(p.evaluate_z(t), s / 500.0, 1e-13);
    EXPECT_NEAR(p.evaluate_y(t), std::sqrt(500.0) * (s / 500.0 - (t + t * t)), 1e-11);
  }
}

TEST(SamplePath, FromPoints) {
  const auto p = SamplePath::from_points(share(Distribution::uniform()), share(WeightFunction::constant(1.0)), 4,
                                         {0.75, 0.25, 0.5, 0.5});
  EXPECT_EQ(p.count_upto(0.5), 3u);
  EXPECT_EQ(p.count_below(0.5), 1u);
  EXPECT_NEAR(p.evaluate_y(0.5), 2.0 * (0.75 - 0.5), 1e-15);
  EXPECT_THROW(SamplePath::from_points(share(Distribution::uniform()), share(WeightFunction::constant(1.0)), 4, {1.5}),
               DomainError);
}

TEST(SamplePath, ConstantWeightHasNoFirstComponent) {
  const auto p = SamplePath::simulate(share(Distribution({ContinuousPart::uniform(0.0, 1.0, 0.6)}, {{0.4, 0.4}})),
                                      share(WeightFunction::constant(1.0)), 300, SamplingMode::fixed_n, 5);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    EXPECT_EQ(p.decompose(t).yprime, 0.0) << t;
  }
}

TEST(SamplePath, WeightFailureIsReported) {
  const Distribution d({ContinuousPart::uniform(0.0, 1.0, 0.5)}, {{0.0, 0.5}});
  try {
    SamplePath::simulate(share(d), share(WeightFunction::power(0.25)), 50, SamplingMode::fixed_n, 1);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("process::simulate", 0), 0u);
  }
}

TEST(SamplePath, PoissonizedCountHasMeanN) {
  const auto d = share(Distribution::uniform());
  const auto f = share(WeightFunction::constant(1.0));
  double total = 0.0;
  const int reps = 400;
  for (int r = 0; r < reps; ++r) {
    auto eng = make_engine(77, r);
    total += static_cast<double>(SamplePath::simulate(d, f, 100, SamplingMode::poissonized, eng).size());
  }
  // Mean of 400 Poisson(100) counts: sd 0.5.
  EXPECT_NEAR(total / reps, 100.0, 2.5);
}

TEST(SamplePath, LeftLimitsAtAtoms) {
  const Distribution d({ContinuousPart::uniform(0.0, 1.0, 0.5)}, {{0.5, 0.5}});
  const auto p = SamplePath::from_points(share(d), share(WeightFunction::constant(1.0)), 4, {0.2, 0.5, 0.5, 0.9});
  // Y(0.5-) = 2 (1/4 - 0.25), Y(0.5) = 2 (3/4 - 0.75).
  EXPECT_NEAR(p.left_limit(Component::y, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(p.value(Component::y, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(p.left_limit(Component::y, 0.2), 2.0 * (0.0 - 0.1), 1e-15);
  EXPECT_NEAR(p.value(Component::y, 0.2), 2.0 * (0.25 - 0.1), 1e-15);
}

TEST(SamplePathProperty, DecompositionIsExact) {
  Engine eng(606);
  for (int c = 0; c < 100; ++c) {
    const auto d = share(wep::testing::random_distribution(eng));
    const auto f = share(wep::testing::random_weight(eng));
    const auto p = SamplePath::simulate(d, f, static_cast<std::size_t>(wep::testing::pick(eng, 1, 400)),
                                        c % 2 ? SamplingMode::poissonized : SamplingMode::fixed_n, eng);
    for (int k = 0; k < 10; ++k) {
      const double t = wep::testing::unif(eng, 0.0, 1.0);
      const auto dec = p.decompose(t);
      EXPECT_LE(std::abs(dec.yprime + dec.ydoubleprime - p.evaluate_y(t)), 1e-12);
    }
  }
}

TEST(SamplePathProperty, SecondComponentVanishesWhereFIsZero) {
  const Distribution d({ContinuousPart::uniform(0.5, 1.0)}, {});
  const auto p = SamplePath::simulate(share(d), share(WeightFunction::sine()), 100, SamplingMode::fixed_n, 3);
  for (double t : {0.0, 0.2, 0.49}) {
    EXPECT_EQ(p.decompose(t).ydoubleprime, 0.0);
    EXPECT_EQ(p.decompose(t).yprime, 0.0);
  }
}
