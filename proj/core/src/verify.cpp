#include "wepkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "wepkit/error.hpp"
#include "wepkit/modulus.hpp"
#include "wepkit/moments.hpp"
#include "wepkit/parallel.hpp"
#include "wepkit/rng.hpp"
#include "wepkit/stats.hpp"

namespace wep {

namespace {

void check_grid(const std::vector<double>& grid, const char* where) {
  if (grid.empty()) throw DomainError(where, "grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw DomainError(where, "grid points must lie in [0, 1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError(where, "grid must be strictly increasing");
  }
}

// Centered cross-product sums over a range of rows.
struct Sums {
  std::vector<NeumaierSum> s;
  std::vector<NeumaierSum> ss;
  double count = 0.0;
};

Sums block_sums(const Matrix& c, std::size_t begin, std::size_t end) {
  const std::size_t k = c.cols();
  Sums out{std::vector<NeumaierSum>(k), std::vector<NeumaierSum>(k * k),
           static_cast<double>(end - begin)};
  for (std::size_t r = begin; r < end; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      out.s[i].add(c(r, i));
      for (std::size_t j = i; j < k; ++j) out.ss[i * k + j].add(c(r, i) * c(r, j));
    }
  }
  return out;
}

double cov_from(double sij, double si, double sj, double count) {
  return (sij - si * sj / count) / (count - 1.0);
}

} // namespace

CovEstimate covariance_with_se(const Matrix& values) {
  constexpr auto where = "verify::mc_covariance";
  const std::size_t r = values.rows();
  const std::size_t k = values.cols();
  if (r < kJackknifeBlocks)
    throw DomainError(where, "need at least " + std::to_string(kJackknifeBlocks) + " replicates");

  Matrix centered = values;
  for (std::size_t j = 0; j < k; ++j) {
    NeumaierSum s;
    for (std::size_t i = 0; i < r; ++i) s.add(values(i, j));
    const double mean = s.value() / static_cast<double>(r);
    for (std::size_t i = 0; i < r; ++i) centered(i, j) = values(i, j) - mean;
  }

  std::vector<Sums> blocks;
  blocks.reserve(kJackknifeBlocks);
  for (std::size_t b = 0; b < kJackknifeBlocks; ++b)
    blocks.push_back(block_sums(centered, r * b / kJackknifeBlocks, r * (b + 1) / kJackknifeBlocks));

  std::vector<double> total_s(k, 0.0), total_ss(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    NeumaierSum s;
    for (const auto& blk : blocks) s.add(blk.s[i].value());
    total_s[i] = s.value();
    for (std::size_t j = i; j < k; ++j) {
      NeumaierSum ss;
      for (const auto& blk : blocks) ss.add(blk.ss[i * k + j].value());
      total_ss[i * k + j] = ss.value();
    }
  }

  CovEstimate est{Matrix(k, k), Matrix(k, k)};
  const double rd = static_cast<double>(r);
  const double nb = static_cast<double>(kJackknifeBlocks);
  std::vector<double> theta(kJackknifeBlocks);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double full = cov_from(total_ss[i * k + j], total_s[i], total_s[j], rd);
      NeumaierSum mean;
      for (std::size_t b = 0; b < kJackknifeBlocks; ++b) {
        const auto& blk = blocks[b];
        theta[b] = cov_from(total_ss[i * k + j] - blk.ss[i * k + j].value(),
                            total_s[i] - blk.s[i].value(), total_s[j] - blk.s[j].value(),
                            rd - blk.count);
        mean.add(theta[b]);
      }
      const double tbar = mean.value() / nb;
      NeumaierSum dev;
      for (double t : theta) dev.add((t - tbar) * (t - tbar));
      const double se = std::sqrt((nb - 1.0) / nb * dev.value());
      est.cov(i, j) = est.cov(j, i) = full;
      est.se(i, j) = est.se(j, i) = se;
    }
  }
  return est;
}

McEstimate mc_covariance(const Distribution& d, const WeightFunction& f, std::size_t n,
                         std::size_t replicates, const std::vector<double>& grid, SamplingMode mode,
                         std::uint64_t seed, unsigned workers) {
  constexpr auto where = "verify::mc_covariance";
  check_grid(grid, where);
  if (n == 0) throw DomainError(where, "n must be >= 1");
  if (replicates < kJackknifeBlocks)
    throw DomainError(where, "need at least " + std::to_string(kJackknifeBlocks) + " replicates");
  const std::size_t k = grid.size();
  const CompensatorTable comp(d, f, grid);
  const double nd = static_cast<double>(n);
  const double rn = std::sqrt(nd);

  McEstimate est;
  est.grid = grid;
  est.replicates = replicates;
  est.n = n;
  est.mode = mode;
  est.values = Matrix(replicates, k);
  parallel_for(replicates, workers, [&](std::size_t r) {
    auto eng = make_engine(seed, r);
    std::size_t count = n;
    if (mode == SamplingMode::poissonized) {
      std::poisson_distribution<long long> pois(nd);
      count = static_cast<std::size_t>(pois(eng));
    }
    std::vector<double> cell(k, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      const double x = d.draw(eng);
      const auto it = std::lower_bound(grid.begin(), grid.end(), x);
      if (it == grid.end()) continue;
      double v;
      try {
        v = f(x);
      } catch (const DomainError& e) {
        throw DomainError("process::simulate", std::string("weight evaluation failed: ") + e.what());
      }
      cell[static_cast<std::size_t>(it - grid.begin())] += v;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      acc += cell[j];
      est.values(r, j) = (acc - nd * comp.z(j)) / rn;
    }
  });
  auto cov = covariance_with_se(est.values);
  est.cov = std::move(cov.cov);
  est.se = std::move(cov.se);
  return est;
}

CovComparison compare_cov(const McEstimate& est, const Matrix& sigma, double threshold) {
  const std::size_t k = est.grid.size();
  if (sigma.rows() != k || sigma.cols() != k)
    throw DomainError("verify::compare_cov", "grid mismatch between estimate and model");
  CovComparison out;
  out.threshold = threshold;
  out.z = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double diff = est.cov(i, j) - sigma(i, j);
      double z = 0.0;
      if (est.se(i, j) > 0.0)
        z = diff / est.se(i, j);
      else if (diff != 0.0)
        z = HUGE_VAL;
      out.z(i, j) = z;
      out.max_abs_z = std::max(out.max_abs_z, std::abs(z));
      out.max_abs_diff = std::max(out.max_abs_diff, std::abs(diff));
    }
  }
  out.pass = out.max_abs_z <= threshold;
  return out;
}

CovComparison compare_cov(const McEstimate& est, const CovarianceModel& model, double threshold) {
  if (model.grid != est.grid)
    throw DomainError("verify::compare_cov", "grid mismatch between estimate and model");
  return compare_cov(est, model.sigma, threshold);
}

CovComparison compare_sample_cov(const std::vector<std::vector<double>>& samples, const Matrix& sigma,
                                 double threshold) {
  constexpr auto where = "verify::compare_sample_cov";
  const std::size_t k = sigma.rows();
  if (samples.empty()) throw DomainError(where, "no samples");
  for (const auto& x : samples)
    if (x.size() != k) throw DomainError(where, "sample dimension does not match the grid");
  const double count = static_cast<double>(samples.size());
  CovComparison out;
  out.threshold = threshold;
  out.z = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      NeumaierSum s;
      for (const auto& x : samples) s.add(x[i] * x[j]);
      const double diff = s.value() / count - sigma(i, j);
      const double se = std::sqrt((sigma(i, i) * sigma(j, j) + sigma(i, j) * sigma(i, j)) / count);
      const double z = se > 0.0 ? diff / se : (diff != 0.0 ? HUGE_VAL : 0.0);
      out.z(i, j) = z;
      out.max_abs_z = std::max(out.max_abs_z, std::abs(z));
      out.max_abs_diff = std::max(out.max_abs_diff, std::abs(diff));
    }
  }
  out.pass = out.max_abs_z <= threshold;
  return out;
}

NormalityReport marginal_normality(const std::vector<double>& samples, double sigma2) {
  if (samples.size() < 1000) throw DomainError("verify::marginal_normality", "need at least 1000 samples");
  NormalityReport rep;
  rep.count = samples.size();
  if (!(sigma2 > 0.0)) {
    const bool constant_zero =
        std::all_of(samples.begin(), samples.end(), [](double x) { return x == 0.0; });
    rep.pass = constant_zero;
    rep.reason = constant_zero ? "degenerate: all samples 0" : "sigma2 <= 0 with nonconstant samples";
    return rep;
  }
  const auto m = sample_moments(samples);
  rep.skewness = m.skewness;
  rep.excess_kurtosis = m.excess_kurtosis;
  rep.skewness_z = m.skewness / skewness_se(rep.count);
  rep.kurtosis_z = (m.excess_kurtosis - kurtosis_mean(rep.count)) / kurtosis_se(rep.count);
  const double sd = std::sqrt(sigma2);
  rep.ks = ks_statistic(samples, [sd](double x) { return normal_cdf(x / sd); });
  rep.ks_scaled = rep.ks * ks_scale(rep.count);
  const bool skew_ok = std::abs(rep.skewness_z) <= kMomentZThreshold;
  const bool kurt_ok = std::abs(rep.kurtosis_z) <= kMomentZThreshold;
  const bool ks_ok = rep.ks_scaled <= kKsThreshold;
  rep.pass = skew_ok && kurt_ok && ks_ok;
  if (!skew_ok) rep.reason += "skewness ";
  if (!kurt_ok) rep.reason += "kurtosis ";
  if (!ks_ok) rep.reason += "ks ";
  if (!rep.reason.empty()) rep.reason.pop_back();
  return rep;
}

MaximalReport maximal_inequality_probe(const Distribution& d, const WeightFunction& f,
                                       const Interval& o, std::size_t n, std::size_t l, double x,
                                       std::size_t replicates, std::uint64_t seed, unsigned workers,
                                       const std::optional<BoundFunction>& h) {
  constexpr auto where = "verify::maximal_inequality_probe";
  const double mass = d.mass(o);
  if (!(mass > 0.0)) throw DomainError(where, "interval O must have positive mass");
  if (l == 0) throw DomainError(where, "L must be >= 1");
  if (n == 0) throw DomainError(where, "n must be >= 1");
  if (replicates == 0) throw DomainError(where, "R must be >= 1");
  const auto cm = conditional_moments(d, f, o);
  const double nd = static_cast<double>(n);
  const double ld = static_cast<double>(l);

  MaximalReport rep;
  rep.variance = cm.variance;
  rep.c = h ? std::sqrt(2.0 * ld * (*h)(mass) / (nd * mass)) : std::sqrt(2.0 * ld * cm.variance / nd);
  rep.degenerate = cm.variance <= 1e-15 * std::max(1.0, cm.mean * cm.mean);
  if (rep.degenerate) {
    // Every partial sum is 0.
    rep.lhs = x <= 0.0 ? 1.0 : 0.0;
    rep.rhs = std::min(1.0, x - rep.c <= 0.0 ? 2.0 : 0.0);
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
  }

  std::vector<unsigned char> hit_max(replicates), hit_end(replicates);
  const double rn = std::sqrt(nd);
  parallel_for(replicates, workers, [&](std::size_t r) {
    auto eng = make_engine(seed, r);
    double s = 0.0, mx = -HUGE_VAL;
    for (std::size_t i = 0; i < l; ++i) {
      s += (f(d.conditional_draw(o, eng)) - cm.mean) / rn;
      mx = std::max(mx, s);
    }
    hit_max[r] = mx >= x;
    hit_end[r] = s >= x - rep.c;
  });
  const double rd = static_cast<double>(replicates);
  double a = 0.0, b = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    a += hit_max[r];
    b += hit_end[r];
  }
  const double p = a / rd, q = b / rd;
  rep.lhs = p;
  rep.lhs_se = std::sqrt(p * (1.0 - p) / rd);
  rep.rhs = std::min(1.0, 2.0 * q);
  rep.rhs_se = 2.0 * std::sqrt(q * (1.0 - q) / rd);
  rep.holds = rep.lhs <= rep.rhs + 3.0 * std::hypot(rep.lhs_se, rep.rhs_se);
  return rep;
}

TightnessTable tightness_probe(const Distribution& d, const WeightFunction& f,
                               const std::vector<std::size_t>& ns, const std::vector<double>& deltas,
                               double epsilon, std::size_t replicates, std::uint64_t seed,
                               unsigned workers) {
  constexpr auto where = "verify::tightness_probe";
  if (!(epsilon > 0.0)) throw DomainError(where, "epsilon must be > 0");
  if (replicates == 0) throw DomainError(where, "R must be >= 1");
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    if (!(deltas[j] > 0.0 && deltas[j] < 1.0)) throw DomainError(where, "deltas must lie in (0, 1)");
    if (j > 0 && !(deltas[j] < deltas[j - 1])) throw DomainError(where, "deltas must be decreasing");
  }
  for (std::size_t n : ns)
    if (n == 0) throw DomainError(where, "n must be >= 1");

  auto dp = std::make_shared<const Distribution>(d);
  auto fp = std::make_shared<const WeightFunction>(f);
  TightnessTable t;
  t.ns = ns;
  t.deltas = deltas;
  t.epsilon = epsilon;
  t.replicates = replicates;
  const std::size_t nd = deltas.size();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::vector<unsigned char> hits(replicates * nd, 0);
    const std::uint64_t base = stream_seed(seed, i);
    parallel_for(replicates, workers, [&](std::size_t r) {
      auto eng = make_engine(base, r);
      const auto path = SamplePath::simulate(dp, fp, ns[i], SamplingMode::fixed_n, eng);
      for (std::size_t j = 0; j < nd; ++j) hits[r * nd + j] = modulus(path, deltas[j]).value >= epsilon;
    });
    std::vector<double> prob(nd), se(nd);
    const double rd = static_cast<double>(replicates);
    for (std::size_t j = 0; j < nd; ++j) {
      double c = 0.0;
      for (std::size_t r = 0; r < replicates; ++r) c += hits[r * nd + j];
      prob[j] = c / rd;
      se[j] = std::sqrt(prob[j] * (1.0 - prob[j]) / rd);
    }
    t.prob.push_back(std::move(prob));
    t.se.push_back(std::move(se));
  }
  return t;
}

} // namespace wep
