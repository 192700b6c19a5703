#pragma once

// Independent brute-force posterior for small grids: enumerate every latent
// count configuration, integrate the anchor and the hazards analytically.
// Used only to check the Gibbs sampler; shares no code with its update path.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bephaz/data.hpp"
#include "bephaz/grid.hpp"
#include "bephaz/prior.hpp"

namespace test_oracle {

using bephaz::BepPrior;
using bephaz::Grid;
using bephaz::Matrix;
using bephaz::SufficientStats;

inline double log_beta_fn(double x, double y) {
  return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

inline double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

struct ExactPosterior {
  Matrix<double> e_pi;
  Matrix<double> e_upsilon;
  long n_configurations = 0;
};

inline ExactPosterior enumerate_posterior(const BepPrior& prior, const Grid& grid,
                                          const SufficientStats& stats,
                                          long max_configurations = 4096) {
  const int nx = grid.n_ages;
  const int nt = grid.n_total_times();

  std::vector<std::pair<int, int>> cells;  // all grid cells, row-major
  long n_config = 1;
  for (int x = 1; x <= nx; ++x) {
    for (int t = 1; t <= nt; ++t) {
      cells.emplace_back(x, t);
      n_config *= prior.c(x, t) + 1;
      if (n_config > max_configurations) {
        throw std::runtime_error("latent configuration space too large to enumerate");
      }
    }
  }

  long total_c = 0;
  for (int v : prior.c.data()) total_c += v;

  ExactPosterior out;
  out.n_configurations = n_config;

  Matrix<int> u(nx, nt, 0);
  std::vector<double> log_weights;
  std::vector<Matrix<double>> cond_pi_means;
  std::vector<Matrix<int>> configs;
  log_weights.reserve(static_cast<std::size_t>(n_config));

  for (long idx = 0; idx < n_config; ++idx) {
    // decode mixed-radix index into a configuration
    long rem = idx;
    long sum_u = 0;
    for (const auto& [x, t] : cells) {
      const int radix = prior.c(x, t) + 1;
      u(x, t) = static_cast<int>(rem % radix);
      rem /= radix;
      sum_u += u(x, t);
    }

    double lw = log_beta_fn(prior.a + sum_u, prior.b + (total_c - sum_u));
    Matrix<double> cond_mean(nx, nt);
    for (const auto& [x, t] : cells) {
      lw += log_choose(prior.c(x, t), u(x, t));
      long su = 0, sc = 0;
      for (const auto& cell : bephaz::neighborhood(x, t, prior, grid).cells) {
        su += u(cell.x, cell.t);
        sc += prior.c(cell.x, cell.t);
      }
      const double alpha = prior.a + su;
      const double beta = prior.b + (sc - su);
      const int r = stats.deaths(x, t);
      const int m = stats.at_risk(x, t);
      lw += log_beta_fn(alpha + r, beta + (m - r)) - log_beta_fn(alpha, beta);
      cond_mean(x, t) = (alpha + r) / (alpha + beta + m);
    }
    log_weights.push_back(lw);
    cond_pi_means.push_back(std::move(cond_mean));
    configs.push_back(u);
  }

  const double mx = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0.0;
  for (double& w : log_weights) {
    w = std::exp(w - mx);
    total += w;
  }

  out.e_pi = Matrix<double>(nx, nt, 0.0);
  out.e_upsilon = Matrix<double>(nx, nt, 0.0);
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    const double w = log_weights[i] / total;
    for (const auto& [x, t] : cells) {
      out.e_pi(x, t) += w * cond_pi_means[i](x, t);
      out.e_upsilon(x, t) += w * configs[i](x, t);
    }
  }
  return out;
}

}  // namespace test_oracle
