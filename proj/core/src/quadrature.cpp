#include "wepkit/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "wepkit/error.hpp"

namespace wep::quad {

namespace {

// Abscissae / weights of the 15-point Kronrod rule and its embedded 7-point
// Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  int level;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gauss_kronrod(const Integrand& g, double a, double b, int level) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double f1 = g(center - dx);
    const double f2 = g(center + dx);
    kronrod += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod))
    throw DivergenceError("quadrature::integrate", "integrand is not finite on the interval");
  return {a, b, kronrod, std::abs(kronrod - gauss), level};
}

} // namespace

double integrate(const Integrand& g, double a, double b, Options opt) {
  if (b <= a) return 0.0;
  std::priority_queue<Piece> queue;
  queue.push(gauss_kronrod(g, a, b, 0));
  double total = queue.top().value;
  double error = queue.top().error;
  // A hard cap on evaluations keeps pathological integrands bounded.
  constexpr int kMaxSplits = 20000;
  for (int split = 0; error > opt.abs_tol; ++split) {
    Piece worst = queue.top();
    if (worst.level >= opt.max_levels || split >= kMaxSplits)
      throw DivergenceError("quadrature::integrate",
                            "refinement budget exhausted before reaching the tolerance");
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Piece left = gauss_kronrod(g, worst.a, mid, worst.level + 1);
    Piece right = gauss_kronrod(g, mid, worst.b, worst.level + 1);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to drop the drift of the running update.
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    queue.pop();
  }
  return sum;
}

double integrate_from_zero(const Integrand& g, double b, Options opt) {
  if (b <= 0.0) return 0.0;
  Options piece_opt = opt;
  piece_opt.abs_tol = opt.abs_tol * 1e-2;
  double sum = 0.0;
  double prev_piece = 0.0;
  double prev_extrapolated = 0.0;
  double prev_ratio = -1.0;
  int non_decaying = 0;
  double hi = b;
  for (int level = 0; level < opt.max_levels; ++level) {
    const double lo = 0.5 * hi;
    const double piece = integrate(g, lo, hi, piece_opt);
    sum += piece;
    if (level >= 1) {
      if (piece == 0.0 && prev_piece == 0.0) return sum;
      const double ratio = prev_piece != 0.0 ? std::abs(piece / prev_piece) : HUGE_VAL;
      if (ratio >= 1.0 - 1e-9) {
        if (++non_decaying >= 8)
          throw DivergenceError("quadrature::integrate_from_zero",
                                "dyadic pieces do not decay towards 0");
      } else {
        non_decaying = 0;
        // Geometric tail sum_{k>level} piece * ratio^(k-level); trusted once
        // the ratio has settled.
        const double extrapolated = sum + piece * ratio / (1.0 - ratio);
        if (level >= 6 && std::abs(extrapolated - prev_extrapolated) <= opt.abs_tol &&
            std::abs(ratio - prev_ratio) <= 1e-6 * ratio)
          return extrapolated;
        prev_extrapolated = extrapolated;
        prev_ratio = ratio;
      }
    }
    prev_piece = piece;
    hi = lo;
  }
  throw DivergenceError("quadrature::integrate_from_zero",
                        "refinement budget of dyadic levels exhausted");
}

} // namespace wep::quad
