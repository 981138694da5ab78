#pragma once

#include <cstdint>
#include <vector>

#include "wepkit/distribution.hpp"
#include "wepkit/matrix.hpp"
#include "wepkit/weight.hpp"

namespace wep {

//! Var(Y_s) = F(s) Var(f(X) | X <= s) + F(s)(1 - F(s)) E(f(X) | X <= s)^2.
double var_at(const Distribution& d, const WeightFunction& f, double s);

//! Cov(Y_s, Y_t) for s <= t, as Var(Y_s) + Cov(Y_s, Y_t - Y_s) with
//! Cov(Y_s, Y_t - Y_s) = -F(s)(F(t) - F(s)) E(f | X <= s) E(f | s < X <= t).
double cov_pair(const Distribution& d, const WeightFunction& f, double s, double t);

//! Covariance of the limit process on a grid, with a factor for sampling.
struct CovarianceModel {
  std::vector<double> grid;
  Matrix sigma;
  //! Lower-triangular L with L L^T = sigma + jitter * I on the rows with a
  //! positive diagonal; zero rows stay zero.
  Matrix factor;
  double jitter = 0.0;
};

//! Jitter ladder, as multiples of the largest diagonal entry.
inline constexpr double kJitterLadder[] = {0.0, 1e-14, 1e-12, 1e-10};

//! Fills sigma from cov_pair and factorizes it. Throws NumericalError
//! (value = most negative eigenvalue) if the jitter ladder is exhausted.
CovarianceModel build_matrix(const Distribution& d, const WeightFunction& f,
                             const std::vector<double>& grid, unsigned workers = 1);

//! Covariance of the Poissonized process: E f(X)^2 1{X <= min(s, t)}.
CovarianceModel build_poissonized_matrix(const Distribution& d, const WeightFunction& f,
                                         const std::vector<double>& grid);

//! Factorizes an arbitrary symmetric PSD matrix with the jitter ladder.
CovarianceModel factorize(std::vector<double> grid, Matrix sigma);

//! Cov(G_k, G_l) = -dF_k dF_l + 1{k = l} dF_k for the multinomial cell
//! counts of a partition 0 = theta_0 < ... < theta_K = 1. Cell 1 is
//! [0, theta_1] and carries any atom at 0; the result is K x K.
Matrix multinomial_g_cov(const std::vector<double>& partition, const Distribution& d);

//! Finite-dimensional form: increments over cells [0, s_1], (s_1, s_2], ...
struct IncrementModel {
  std::vector<double> grid;
  std::vector<double> delta_f;
  std::vector<double> cond_mean;
  std::vector<double> cond_var;
  //! Covariance of the Gaussian limit G of the centered, scaled cell counts.
  Matrix g_cov;
  //! Cov(dY_j, dY_k) = 1{j = k} dF_j Var_j + E_j E_k Cov(G_j, G_k).
  Matrix increment_cov;

  //! Covariance of the partial sums Y_{s_i} = sum_{j <= i} dY_j.
  Matrix cumulative() const;
};

IncrementModel build_increment_matrix(const Distribution& d, const WeightFunction& f,
                                      const std::vector<double>& grid);

//! count i.i.d. centered Gaussian vectors with covariance model.sigma (up to
//! the applied jitter). Vector i is drawn from its own stream.
std::vector<std::vector<double>> sample_limit_paths(const CovarianceModel& model, std::size_t count,
                                                    std::uint64_t seed, unsigned workers = 1);

} // namespace wep
