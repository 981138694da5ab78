#pragma once

#include <vector>

#include "wepkit/sample_path.hpp"

namespace wep {

struct ModulusResult {
  double value = 0.0;
  //! Largest oscillation of the continuous part of the drift over one cell of
  //! the delta/4 grid; the restriction of partition points to the candidate
  //! set over-approximates the infimum by at most this much.
  double drift_bound = 0.0;
  //! Chosen partition 0 = t_0 < ... < t_k = 1.
  std::vector<double> partition;
};

//! Billingsley modulus: inf over partitions 0 = t_0 < ... < t_k = 1 with
//! t_i - t_{i-1} >= delta of max_i sup_{s,t in [t_{i-1}, t_i)} |W(s) - W(t)|.
//! Candidate cut points are the jump points, a delta/4 grid and, when the
//! count stays small, the chains jump + k delta; the minimisation over them is
//! an exact dynamic program.
ModulusResult modulus(const SamplePath& path, double delta, Component which = Component::y);

} // namespace wep
