#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wepkit/distribution.hpp"
#include "wepkit/hypothesis.hpp"
#include "wepkit/interval.hpp"
#include "wepkit/limit.hpp"
#include "wepkit/matrix.hpp"
#include "wepkit/sample_path.hpp"
#include "wepkit/weight.hpp"

namespace wep {

inline constexpr std::size_t kJackknifeBlocks = 100;
inline constexpr double kCovZThreshold = 4.0;
//! Two-sided 0.999 normal quantile, used for the skewness and kurtosis z.
inline constexpr double kMomentZThreshold = 3.2905;
//! 0.999 quantile of the Kolmogorov distribution.
inline constexpr double kKsThreshold = 1.9495;

struct CovEstimate {
  Matrix cov;
  Matrix se;
};

//! Sample covariance (divisor R - 1) of the rows of an R x K matrix with
//! delete-a-block jackknife standard errors over kJackknifeBlocks blocks.
//! Requires R >= kJackknifeBlocks.
CovEstimate covariance_with_se(const Matrix& values);

struct McEstimate {
  std::vector<double> grid;
  Matrix cov;
  Matrix se;
  std::size_t replicates = 0;
  std::size_t n = 0;
  SamplingMode mode = SamplingMode::fixed_n;
  //! Y_n(grid[k]) of replicate r at (r, k).
  Matrix values;
};

//! Monte Carlo covariance of (Y_n(s))_{s in grid}. Replicate r draws from
//! stream r of seed, so the estimate does not depend on workers.
McEstimate mc_covariance(const Distribution& d, const WeightFunction& f, std::size_t n,
                         std::size_t replicates, const std::vector<double>& grid, SamplingMode mode,
                         std::uint64_t seed, unsigned workers = 1);

struct CovComparison {
  Matrix z;
  double max_abs_z = 0.0;
  double max_abs_diff = 0.0;
  double threshold = kCovZThreshold;
  bool pass = false;
};

CovComparison compare_cov(const McEstimate& est, const CovarianceModel& model,
                          double threshold = kCovZThreshold);
//! Same against a bare matrix on est.grid.
CovComparison compare_cov(const McEstimate& est, const Matrix& sigma,
                          double threshold = kCovZThreshold);

//! Zero-mean sample covariance of Gaussian vectors against sigma, with
//! SE_ij = sqrt((s_ii s_jj + s_ij^2) / N).
CovComparison compare_sample_cov(const std::vector<std::vector<double>>& samples, const Matrix& sigma,
                                 double threshold = 3.0);

struct NormalityReport {
  std::size_t count = 0;
  double skewness = 0.0;
  double skewness_z = 0.0;
  double excess_kurtosis = 0.0;
  double kurtosis_z = 0.0;
  double ks = 0.0;
  //! ks scaled by sqrt(n) + 0.12 + 0.11 / sqrt(n); compared to kKsThreshold.
  double ks_scaled = 0.0;
  bool pass = false;
  std::string reason;
};

//! Skewness, kurtosis and KS checks against N(0, sigma2). Needs >= 1000
//! samples.
NormalityReport marginal_normality(const std::vector<double>& samples, double sigma2);

struct MaximalReport {
  double lhs = 0.0; //!< P(max_{i <= L} S_i >= x)
  double lhs_se = 0.0;
  double rhs = 0.0; //!< min(1, 2 P(S_L >= x - C))
  double rhs_se = 0.0;
  double c = 0.0;
  double variance = 0.0;
  bool degenerate = false;
  bool holds = false;
};

//! Monte Carlo probe of the maximal inequality for partial sums of
//! (f(X) - E f(X)) / sqrt(n) with X drawn from mu restricted to O. C uses
//! Var(f | O), or sqrt(2 L h(mu(O)) / (n mu(O))) when h is given.
MaximalReport maximal_inequality_probe(const Distribution& d, const WeightFunction& f,
                                       const Interval& o, std::size_t n, std::size_t l, double x,
                                       std::size_t replicates, std::uint64_t seed,
                                       unsigned workers = 1,
                                       const std::optional<BoundFunction>& h = std::nullopt);

struct TightnessTable {
  std::vector<std::size_t> ns;
  std::vector<double> deltas;
  double epsilon = 0.0;
  std::size_t replicates = 0;
  //! prob[i][j]: P(w'(Y_n, delta) >= epsilon) for n = ns[i], delta = deltas[j].
  std::vector<std::vector<double>> prob;
  std::vector<std::vector<double>> se;
};

//! All deltas are evaluated on the same simulated paths. Deltas must be
//! strictly decreasing and lie in (0, 1); epsilon > 0.
TightnessTable tightness_probe(const Distribution& d, const WeightFunction& f,
                               const std::vector<std::size_t>& ns, const std::vector<double>& deltas,
                               double epsilon, std::size_t replicates, std::uint64_t seed,
                               unsigned workers = 1);

} // namespace wep
