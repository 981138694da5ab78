#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "wepkit/distribution.hpp"
#include "wepkit/interval.hpp"
#include "wepkit/weight.hpp"

namespace wep {

enum class SamplingMode { fixed_n, poissonized };

//! Which process a path query refers to: Y_n or one of the two parts of the
//! decomposition Y_n = Y' + Y''.
enum class Component { y, y_prime, y_double_prime };

struct Decomposition {
  double yprime = 0.0;
  double ydoubleprime = 0.0;
};

//! Range of a path over a set of times.
struct Extremes {
  double min = HUGE_VAL;
  double max = -HUGE_VAL;

  void add(double v) {
    min = std::min(min, v);
    max = std::max(max, v);
  }
  void merge(const Extremes& o) {
    min = std::min(min, o.min);
    max = std::max(max, o.max);
  }
  double spread() const { return max >= min ? max - min : 0.0; }
};

//! One realization of Z_n / Y_n stored as sorted points with prefix sums of
//! the weights. Immutable after construction.
class SamplePath {
public:
  using DistPtr = std::shared_ptr<const Distribution>;
  using WeightPtr = std::shared_ptr<const WeightFunction>;

  static SamplePath simulate(DistPtr d, WeightPtr f, std::size_t n, SamplingMode mode,
                             std::uint64_t seed);
  static SamplePath simulate(DistPtr d, WeightPtr f, std::size_t n, SamplingMode mode,
                             Engine& eng);
  //! Path through given points (sorted internally); n is the normalization.
  static SamplePath from_points(DistPtr d, WeightPtr f, std::size_t n, std::vector<double> points,
                                SamplingMode mode = SamplingMode::fixed_n);

  std::size_t n() const noexcept { return n_; }
  //! Number of stored points (N; equals n in fixed-n mode).
  std::size_t size() const noexcept { return xs_.size(); }
  SamplingMode mode() const noexcept { return mode_; }
  const std::vector<double>& values() const noexcept { return xs_; }
  const std::vector<double>& weights() const noexcept { return fx_; }
  //! prefix()[k] = f(X_1) + ... + f(X_k); prefix()[0] = 0.
  const std::vector<double>& prefix() const noexcept { return prefix_; }
  const Distribution& distribution() const noexcept { return *dist_; }
  const WeightFunction& weight() const noexcept { return *weight_; }

  //! N_n(t) = #{i : X_i <= t}.
  std::size_t count_upto(double t) const;
  //! #{i : X_i < t}.
  std::size_t count_below(double t) const;

  double evaluate_z(double t) const;
  double evaluate_y(double t) const;
  Decomposition decompose(double t) const;

  //! Value of the chosen component at t, and its left limit at t.
  double value(Component which, double t) const;
  double left_limit(Component which, double t) const;

  //! Times where some component can jump: sample points and atoms of mu.
  std::vector<double> jump_points() const;

  //! sup |W(s) - W(t)| over s, t in (lower, upper].
  double oscillation(const Interval& iv, Component which = Component::y) const;

  //! Range of the component over [s, t) when no jump point lies in (s, t):
  //! W(s), the left limit W(t-) and the interior extrema of the drift.
  Extremes segment_extremes(Component which, double s, double t) const;

private:
  SamplePath(DistPtr d, WeightPtr f, std::size_t n, SamplingMode mode, std::vector<double> xs);

  struct State {
    double count; // N
    double sum;   // S
    double z;     // compensator
    double cdf;   // F
  };
  State state_at(double t) const;
  State state_before(double t) const;
  double component(Component which, const State& s) const;
  double drift(Component which, double t, std::size_t count) const;
  std::vector<double> critical_points(double s, double t) const;

  DistPtr dist_;
  WeightPtr weight_;
  std::size_t n_;
  SamplingMode mode_;
  std::vector<double> xs_;
  std::vector<double> fx_;
  std::vector<double> prefix_;
};

} // namespace wep
