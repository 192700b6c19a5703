#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bephaz/data.hpp"
#include "bephaz/errors.hpp"
#include "bephaz/random.hpp"

namespace bephaz {

/// Synthetic cohort design: shifted-Poisson lifetimes with a linear drift in
/// the rate across periods, independent shifted-Poisson censoring, truncation
/// at max_age recorded as censoring.
struct SimDesign {
  double lambda_base = 8.0;
  double lambda_slope = 0.5;   // per time step
  double lambda_censor = 18.0;
  int n_per_time = 1000;
  int n_times = 15;
  int max_age = 18;
  uint64_t seed = 0;

  double lambda_at(int t) const { return lambda_base + (t - 1) * lambda_slope; }

  void validate() const {
    if (!(lambda_censor > 0.0)) throw ConfigError("lambda_censor must be positive");
    if (n_per_time < 1 || n_times < 1 || max_age < 1) {
      throw ConfigError("n_per_time, n_times and max_age must be positive");
    }
    for (int t = 1; t <= n_times; ++t) {
      if (!(lambda_at(t) > 0.0)) {
        throw ConfigError("lambda_base + (t-1)*lambda_slope must stay positive for all t");
      }
    }
  }
};

/// Po+(lambda): Y + 1 with Y ~ Poisson(lambda). Strictly positive.
inline int sample_shifted_poisson(double lambda, Rng& rng) {
  if (!(lambda > 0.0)) throw ConfigError("shifted Poisson rate must be positive");
  return rng.poisson(lambda) + 1;
}

/// Observed age is min(lifetime, censoring age), truncated at max_age; a
/// record is exact only when the death itself lands inside the grid.
inline std::vector<SurvivalRecord> generate(const SimDesign& design) {
  design.validate();
  std::vector<SurvivalRecord> records;
  records.reserve(static_cast<std::size_t>(design.n_per_time) * design.n_times);
  for (int t = 1; t <= design.n_times; ++t) {
    // independent substream per time column
    Rng rng(derive_seed(design.seed, static_cast<uint64_t>(t)));
    const double lambda = design.lambda_at(t);
    for (int i = 0; i < design.n_per_time; ++i) {
      const int z = sample_shifted_poisson(lambda, rng);
      const int c = sample_shifted_poisson(design.lambda_censor, rng);
      int observed = std::min(z, c);
      bool exact = z <= c;
      if (observed > design.max_age) {
        observed = design.max_age;
        exact = false;  // survived past the grid: right-censored at max_age
      }
      records.push_back({observed, t, exact});
    }
  }
  return records;
}

/// Discrete hazard of Po+(lambda): P(Z = x | Z >= x). Evaluated through the
/// tail ratio sum 1/(1 + lambda/x + lambda^2/(x(x+1)) + ...), which stays
/// stable arbitrarily far into the tail.
inline double true_hazard(double lambda, int x) {
  if (!(lambda > 0.0)) throw ConfigError("true_hazard requires lambda > 0");
  if (x < 1) throw ConfigError("true_hazard requires age >= 1");
  double term = 1.0;
  double sum = 1.0;
  for (int k = x; ; ++k) {
    term *= lambda / k;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return 1.0 / sum;
}

/// True hazard matrix over the full extended grid of the design (forecast
/// columns continue the lambda drift).
inline Matrix<double> true_hazard_matrix(const SimDesign& design, int n_forecast = 0) {
  Matrix<double> h(design.max_age, design.n_times + n_forecast);
  for (int t = 1; t <= h.cols(); ++t)
    for (int x = 1; x <= h.rows(); ++x)
      h(x, t) = true_hazard(design.lambda_at(t), x);
  return h;
}

}  // namespace bephaz
