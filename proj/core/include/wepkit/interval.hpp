#pragma once

#include "wepkit/error.hpp"

namespace wep {

//! Half-open interval (lower, upper] inside [0, 1].
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  Interval() = default;
  Interval(double lo, double hi) : lower(lo), upper(hi) {
    if (!(lo >= 0.0 && lo <= hi && hi <= 1.0))
      throw DomainError("dist::Interval", "need 0 <= lower <= upper <= 1");
  }

  bool contains(double x) const noexcept { return x > lower && x <= upper; }
  double length() const noexcept { return upper - lower; }
  bool empty() const noexcept { return upper <= lower; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

} // namespace wep
