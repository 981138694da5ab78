#pragma once

#include <string>
#include <vector>

#include "wepkit/distribution.hpp"

namespace wep {

struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;
  double mass = 0.0;
  //! Index of the gap between heavy atoms this piece was cut from.
  std::size_t origin = 0;
  //! True when the gap had mass > 2a and was split.
  bool split = false;
};

struct MassPartition {
  double threshold = 0.0;
  double median = 0.0;
  std::vector<Atom> heavy_atoms;
  //! Sorted left to right.
  std::vector<Piece> pieces;
};

//! Isolates the atoms of mass >= a in [0, m] (m the median) and cuts the gaps
//! between them into pieces of mass in [a, 2a], leaving at most one lighter
//! remainder per gap. Requires 0 < a < 1.
MassPartition partition_by_mass(const Distribution& d, double a);

//! Mass of a piece with the given endpoint conventions.
double piece_mass(const Distribution& d, const Piece& p);

//! Violated invariants, empty when the partition is valid: every piece mass
//! <= 2a, piece count <= 3/a, heavy count <= 1/a, and pieces plus heavy atoms
//! tile [0, m] with masses summing to F(m).
std::vector<std::string> check_partition(const Distribution& d, const MassPartition& p);

} // namespace wep
