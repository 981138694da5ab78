#pragma once

#include <vector>

#include "wepkit/distribution.hpp"
#include "wepkit/interval.hpp"
#include "wepkit/weight.hpp"

namespace wep {

enum class MomentMethod { automatic, closed_form, quadrature };

//! Integrals of 1, f and f^2 against mu over an interval.
struct RawMoments {
  double mass = 0.0;
  double sum_f = 0.0;
  double sum_f2 = 0.0;
};

struct ConditionalMoments {
  double mean = 0.0;
  double variance = 0.0;
  double mass = 0.0;
};

//! True when every continuous part admits an antiderivative of f^k times its
//! density (power, constant, polynomial, table always; cosine/sine only
//! against uniform parts).
bool has_closed_form(const Distribution& d, const WeightFunction& f);

//! order = 1 integrates mass and f, order = 2 also f^2. The atom at 0 is
//! included only when include_zero_atom is set, since iv is half-open.
RawMoments raw_moments(const Distribution& d, const WeightFunction& f, const Interval& iv,
                       int order = 2, MomentMethod method = MomentMethod::automatic,
                       bool include_zero_atom = false);

//! E(f(X) | X in iv) and Var(f(X) | X in iv); (0, 0) on zero-mass intervals.
ConditionalMoments conditional_moments(const Distribution& d, const WeightFunction& f,
                                       const Interval& iv,
                                       MomentMethod method = MomentMethod::automatic);

//! Conditional moments given X <= s, i.e. on [0, s] including an atom at 0.
ConditionalMoments moments_upto(const Distribution& d, const WeightFunction& f, double s,
                                MomentMethod method = MomentMethod::automatic);

//! Z(t) = E(f(X) 1{X <= t}).
double compensator(const Distribution& d, const WeightFunction& f, double t);

//! Z and F memoized on a fixed grid.
class CompensatorTable {
public:
  CompensatorTable(const Distribution& d, const WeightFunction& f, std::vector<double> grid);

  const std::vector<double>& grid() const noexcept { return grid_; }
  double z(std::size_t i) const { return z_[i]; }
  double cdf(std::size_t i) const { return cdf_[i]; }
  //! Z / F, or 0 where F = 0.
  double mean(std::size_t i) const { return cdf_[i] > 0.0 ? z_[i] / cdf_[i] : 0.0; }

private:
  std::vector<double> grid_;
  std::vector<double> z_;
  std::vector<double> cdf_;
};

} // namespace wep
