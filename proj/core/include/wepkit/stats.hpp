#pragma once

#include <functional>
#include <vector>

namespace wep {

//! Compensated (Neumaier) summation.
class NeumaierSum {
public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double normal_cdf(double x);

//! P(sup |B| <= x) for the Brownian bridge B.
double kolmogorov_cdf(double x);
double kolmogorov_quantile(double p);

//! sup_x |F_n(x) - cdf(x)|; sorts a copy of the samples.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

//! Stephens' finite-n scaling sqrt(n) + 0.12 + 0.11 / sqrt(n).
double ks_scale(std::size_t n);

struct Moments4 {
  double mean = 0.0;
  double variance = 0.0; //!< divisor n
  double skewness = 0.0; //!< g1
  double excess_kurtosis = 0.0; //!< g2
};
Moments4 sample_moments(const std::vector<double>& xs);

//! Standard errors of g1 and g2 under normality.
double skewness_se(std::size_t n);
double kurtosis_se(std::size_t n);
//! E g2 under normality.
double kurtosis_mean(std::size_t n);

} // namespace wep
