#include "wepkit/limit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <string>

#include "wepkit/error.hpp"
#include "wepkit/moments.hpp"
#include "wepkit/parallel.hpp"
#include "wepkit/rng.hpp"

namespace wep {

namespace {

void check_grid(const std::vector<double>& grid, const char* where) {
  if (grid.empty()) throw DomainError(where, "grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw DomainError(where, "grid points must lie in [0, 1]");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw DomainError(where, "grid must be strictly increasing");
  }
}

} // namespace

double var_at(const Distribution& d, const WeightFunction& f, double s) {
  const double F = d.cdf(s);
  if (!(F > 0.0)) return 0.0;
  const auto m = moments_upto(d, f, s);
  return F * m.variance + F * (1.0 - F) * m.mean * m.mean;
}

double cov_pair(const Distribution& d, const WeightFunction& f, double s, double t) {
  if (s > t) throw DomainError("limit::cov_pair", "need s <= t");
  const double vs = var_at(d, f, s);
  if (s == t) return vs;
  const double Fs = d.cdf(s);
  if (!(Fs > 0.0)) return 0.0;
  const double Ft = d.cdf(t);
  const double below = moments_upto(d, f, s).mean;
  const double between = conditional_moments(d, f, Interval(s, t)).mean;
  return vs - Fs * (Ft - Fs) * below * between;
}

CovarianceModel factorize(std::vector<double> grid, Matrix sigma) {
  const std::size_t k = sigma.rows();
  std::vector<std::size_t> active;
  double max_diag = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (sigma(i, i) < 0.0)
      throw NumericalError("limit::build_matrix", "negative variance on the diagonal", sigma(i, i));
    if (sigma(i, i) > 0.0) active.push_back(i);
    max_diag = std::max(max_diag, sigma(i, i));
  }

  CovarianceModel model{std::move(grid), std::move(sigma), Matrix(k, k), 0.0};
  if (active.empty()) return model;

  const auto m = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      a(i, j) = model.sigma(active[static_cast<std::size_t>(i)], active[static_cast<std::size_t>(j)]);

  for (double level : kJitterLadder) {
    const double jitter = level * max_diag;
    Eigen::MatrixXd shifted = a;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success) continue;
    const Eigen::MatrixXd l = llt.matrixL();
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j <= i; ++j)
        model.factor(active[static_cast<std::size_t>(i)], active[static_cast<std::size_t>(j)]) = l(i, j);
    model.jitter = jitter;
    return model;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  const double lowest = eig.eigenvalues().minCoeff();
  throw NumericalError("limit::build_matrix",
                       "covariance is not PSD after jitter 1e-10; most negative eigenvalue " +
                           std::to_string(lowest),
                       lowest);
}

CovarianceModel build_matrix(const Distribution& d, const WeightFunction& f,
                             const std::vector<double>& grid, unsigned workers) {
  check_grid(grid, "limit::build_matrix");
  const std::size_t k = grid.size();
  Matrix sigma(k, k);
  parallel_for(k, workers, [&](std::size_t i) {
    for (std::size_t j = i; j < k; ++j) sigma(i, j) = cov_pair(d, f, grid[i], grid[j]);
  });
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) sigma(i, j) = sigma(j, i);
  return factorize(grid, std::move(sigma));
}

CovarianceModel build_poissonized_matrix(const Distribution& d, const WeightFunction& f,
                                         const std::vector<double>& grid) {
  check_grid(grid, "limit::build_poissonized_matrix");
  const std::size_t k = grid.size();
  std::vector<double> second(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    if (d.cdf(grid[i]) > 0.0)
      second[i] = raw_moments(d, f, Interval(0.0, grid[i]), 2, MomentMethod::automatic, true).sum_f2;
  Matrix sigma(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sigma(i, j) = second[std::min(i, j)];
  return factorize(grid, std::move(sigma));
}

Matrix multinomial_g_cov(const std::vector<double>& partition, const Distribution& d) {
  constexpr auto where = "limit::multinomial_g_cov";
  if (partition.size() < 2 || partition.front() != 0.0 || partition.back() != 1.0)
    throw DomainError(where, "partition must run from 0 to 1");
  check_grid(partition, where);
  const std::size_t k = partition.size() - 1;
  std::vector<double> df(k);
  df[0] = d.cdf(partition[1]);
  for (std::size_t j = 1; j < k; ++j) df[j] = d.mass(Interval(partition[j], partition[j + 1]));
  Matrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i, j) = -df[i] * df[j] + (i == j ? df[i] : 0.0);
  return g;
}

IncrementModel build_increment_matrix(const Distribution& d, const WeightFunction& f,
                                      const std::vector<double>& grid) {
  check_grid(grid, "limit::build_increment_matrix");
  const std::size_t k = grid.size();
  IncrementModel m;
  m.grid = grid;
  m.delta_f.resize(k);
  m.cond_mean.resize(k);
  m.cond_var.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto cm = j == 0 ? moments_upto(d, f, grid[0])
                           : conditional_moments(d, f, Interval(grid[j - 1], grid[j]));
    m.delta_f[j] = cm.mass;
    m.cond_mean[j] = cm.mean;
    m.cond_var[j] = cm.variance;
  }
  m.g_cov = Matrix(k, k);
  m.increment_cov = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m.g_cov(i, j) = -m.delta_f[i] * m.delta_f[j] + (i == j ? m.delta_f[i] : 0.0);
      // sqrt(dF_j) G~_j + G_j E_j with G~ independent of G.
      m.increment_cov(i, j) = m.cond_mean[i] * m.cond_mean[j] * m.g_cov(i, j) +
                              (i == j ? m.delta_f[i] * m.cond_var[i] : 0.0);
    }
  }
  return m;
}

Matrix IncrementModel::cumulative() const {
  const std::size_t k = increment_cov.rows();
  Matrix rows(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      acc += increment_cov(i, j);
      rows(i, j) = acc;
    }
  }
  Matrix out(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      acc += rows(i, j);
      out(i, j) = acc;
    }
  }
  return out;
}

std::vector<std::vector<double>> sample_limit_paths(const CovarianceModel& model, std::size_t count,
                                                    std::uint64_t seed, unsigned workers) {
  const std::size_t k = model.factor.rows();
  std::vector<std::vector<double>> out(count, std::vector<double>(k, 0.0));
  parallel_for(count, workers, [&](std::size_t r) {
    auto eng = make_engine(seed, r);
    std::normal_distribution<double> normal;
    std::vector<double> z(k);
    for (auto& v : z) v = normal(eng);
    auto& x = out[r];
    for (std::size_t i = 0; i < k; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j) acc += model.factor(i, j) * z[j];
      x[i] = acc;
    }
  });
  return out;
}

} // namespace wep
