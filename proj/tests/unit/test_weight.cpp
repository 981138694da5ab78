#include <gtest/gtest.h>

#include <cmath>

#include "wepkit/distribution.hpp"
#include "wepkit/error.hpp"
#include "wepkit/weight.hpp"

using namespace wep;

TEST(Weight, Evaluate) {
  EXPECT_EQ(WeightFunction::constant(3.0)(0.2), 3.0);
  EXPECT_NEAR(WeightFunction::power(0.25)(0.0625), 2.0, 1e-15);
  EXPECT_NEAR(WeightFunction::polynomial({1.0, 2.0, 3.0})(0.5), 2.75, 1e-15);
  EXPECT_NEAR(WeightFunction::cosine()(0.5), -1.0, 1e-15);
  EXPECT_NEAR(WeightFunction::sine()(0.25), 1.0, 1e-15);
  const auto t = WeightFunction::table({0.0, 0.5, 1.0}, {1.0, -1.0});
  EXPECT_EQ(t(0.0), 1.0);
  EXPECT_EQ(t(0.5), 1.0);
  EXPECT_EQ(t(0.50001), -1.0);
}

TEST(Weight, DomainErrors) {
  EXPECT_THROW(WeightFunction::power(0.25)(0.0), DomainError);
  EXPECT_THROW(WeightFunction::constant(1.0)(1.5), DomainError);
  EXPECT_THROW(WeightFunction::table({0.0, 0.4}, {1.0}), DomainError);
  EXPECT_NO_THROW(WeightFunction::power(0.0)(0.0));
}

TEST(Weight, SupAbs) {
  EXPECT_EQ(WeightFunction::constant(-3.0).sup_abs(), 3.0);
  EXPECT_EQ(WeightFunction::cosine().sup_abs(), 1.0);
  EXPECT_TRUE(std::isinf(WeightFunction::power(0.25).sup_abs()));
  // 1 - 4x + 4x^2 = (1 - 2x)^2 peaks at the ends.
  EXPECT_NEAR(WeightFunction::polynomial({1.0, -4.0, 4.0}).sup_abs(), 1.0, 1e-12);
  // x - x^2 peaks at 1/2.
  EXPECT_NEAR(WeightFunction::polynomial({0.0, 1.0, -1.0}).sup_abs(), 0.25, 1e-12);
}

TEST(Weight, SignChanges) {
  EXPECT_EQ(WeightFunction::cosine().sign_change_points(), (std::vector<double>{0.25, 0.75}));
  EXPECT_EQ(WeightFunction::sine().sign_change_points(), (std::vector<double>{0.5}));
  const auto p = WeightFunction::polynomial({-0.3, 1.0}).sign_change_points();
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p[0], 0.3, 1e-12);
}

TEST(Weight, SquareIntegrability) {
  const auto u = Distribution::uniform();
  EXPECT_TRUE(WeightFunction::power(0.25).square_integrable_under(u));
  EXPECT_FALSE(WeightFunction::power(0.5).square_integrable_under(u));
  EXPECT_FALSE(WeightFunction::power(0.75).square_integrable_under(u));
  const Distribution with_zero_atom({ContinuousPart::uniform(0.0, 1.0, 0.9)}, {{0.0, 0.1}});
  EXPECT_FALSE(WeightFunction::power(0.1).square_integrable_under(with_zero_atom));
  // x^{-1/2} against density 2x is fine.
  const Distribution tilted({ContinuousPart::power(1.0, 1.0)}, {});
  EXPECT_TRUE(WeightFunction::power(0.5).square_integrable_under(tilted));
}
