#include "wepkit/partition.hpp"

#include <algorithm>
#include <cmath>

#include "wepkit/error.hpp"

namespace wep {

namespace {

constexpr double kTol = 1e-12;

// F at a right endpoint, F before a left endpoint.
double right_value(const Distribution& d, double x, bool closed) {
  return closed ? d.cdf(x) : d.cdf_left(x);
}
double left_value(const Distribution& d, double x, bool closed) {
  return closed ? d.cdf_left(x) : d.cdf(x);
}

void cut_gap(const Distribution& d, double a, Piece gap, std::size_t origin, std::vector<Piece>& out) {
  double base = left_value(d, gap.lo, gap.lo_closed);
  const double end = right_value(d, gap.hi, gap.hi_closed);
  gap.origin = origin;
  gap.split = end - base > 2.0 * a + kTol;
  Piece cur = gap;
  while (end - base > 2.0 * a + kTol) {
    const double target = base + 2.0 * a;
    const double p = d.quantile(target);
    Piece piece = cur;
    piece.hi = p;
    if (d.cdf(p) <= target + kTol) {
      piece.hi_closed = true;
      cur.lo_closed = false;
    } else {
      // An atom at p would overshoot 2a; it starts the next piece.
      piece.hi_closed = false;
      cur.lo_closed = true;
    }
    piece.mass = piece_mass(d, piece);
    out.push_back(piece);
    cur.lo = p;
    base = left_value(d, cur.lo, cur.lo_closed);
  }
  cur.mass = piece_mass(d, cur);
  out.push_back(cur);
}

} // namespace

double piece_mass(const Distribution& d, const Piece& p) {
  return std::max(0.0, right_value(d, p.hi, p.hi_closed) - left_value(d, p.lo, p.lo_closed));
}

MassPartition partition_by_mass(const Distribution& d, double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("verify::partition_by_mass", "a must lie in (0, 1)");
  MassPartition out;
  out.threshold = a;
  out.median = d.median();
  const double m = out.median;
  for (const auto& atom : d.atoms())
    if (atom.at <= m && atom.mass >= a) out.heavy_atoms.push_back(atom);

  double lo = 0.0;
  bool lo_closed = true;
  std::size_t origin = 0;
  auto gap_until = [&](double hi, bool hi_closed) {
    // Skip gaps that contain no point, e.g. [0, 0) before a heavy atom at 0.
    if (hi > lo || (hi == lo && lo_closed && hi_closed))
      cut_gap(d, a, Piece{lo, hi, lo_closed, hi_closed, 0.0, 0, false}, origin++, out.pieces);
  };
  for (const auto& atom : out.heavy_atoms) {
    gap_until(atom.at, false);
    lo = atom.at;
    lo_closed = false;
  }
  if (out.heavy_atoms.empty() || out.heavy_atoms.back().at < m) gap_until(m, true);
  return out;
}

std::vector<std::string> check_partition(const Distribution& d, const MassPartition& p) {
  std::vector<std::string> bad;
  const double a = p.threshold;
  for (std::size_t i = 0; i < p.pieces.size(); ++i)
    if (p.pieces[i].mass > 2.0 * a + kTol)
      bad.push_back("piece " + std::to_string(i) + " has mass " + std::to_string(p.pieces[i].mass) + " > 2a");
  if (static_cast<double>(p.pieces.size()) > 3.0 / a) bad.push_back("more than 3/a pieces");
  if (static_cast<double>(p.heavy_atoms.size()) > 1.0 / a) bad.push_back("more than 1/a heavy atoms");
  for (const auto& atom : p.heavy_atoms)
    if (atom.mass < a || atom.at > p.median) bad.push_back("heavy atom below threshold or past the median");

  // Walk left to right: each element must start where the previous one ended.
  struct Elem {
    double lo, hi;
    bool lo_closed, hi_closed;
    double mass;
  };
  std::vector<Elem> elems;
  for (const auto& pc : p.pieces) elems.push_back({pc.lo, pc.hi, pc.lo_closed, pc.hi_closed, pc.mass});
  for (const auto& atom : p.heavy_atoms) elems.push_back({atom.at, atom.at, true, true, atom.mass});
  std::sort(elems.begin(), elems.end(), [](const Elem& x, const Elem& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.lo_closed > y.lo_closed;
  });
  double pos = 0.0;
  bool covered = false; // whether pos itself is already covered
  double total = 0.0;
  for (const auto& e : elems) {
    const bool starts_right = e.lo == pos && e.lo_closed != covered;
    if (!starts_right) {
      bad.push_back("cover broken at " + std::to_string(pos));
      return bad;
    }
    if (std::abs(piece_mass(d, Piece{e.lo, e.hi, e.lo_closed, e.hi_closed, 0.0, 0, false}) - e.mass) > kTol)
      bad.push_back("recorded mass mismatch at " + std::to_string(e.lo));
    pos = e.hi;
    covered = e.hi_closed;
    total += e.mass;
  }
  if (!(pos == p.median && covered)) bad.push_back("cover does not reach the median");
  if (std::abs(total - d.cdf(p.median)) > 1e-10) bad.push_back("masses do not sum to F(m)");
  return bad;
}

} // namespace wep
