#pragma once

#include <cmath>
#include <map>
#include <string>

#include "bephaz/csv.hpp"
#include "bephaz/errors.hpp"
#include "bephaz/grid.hpp"
#include "bephaz/matrix.hpp"
#include "bephaz/random.hpp"

namespace bephaz {

/// Dependent beta process prior for a grid of hazard probabilities.
///
/// The hierarchy is: a shared anchor omega ~ Be(a,b); per-cell latent counts
/// upsilon ~ Bin(c, omega); and each hazard pi drawn from a beta whose shapes
/// accumulate the latent counts over the cell's neighborhood. Marginally each
/// pi is Be(a,b); the c matrix and the dependence orders (p, q) control how
/// strongly neighboring cells co-move.
struct BepPrior {
  double a = 1.0;
  double b = 1.0;
  int p = 0;  // age dependence order
  int q = 0;  // time dependence order
  Matrix<int> c;  // binomial trial counts over the extended grid

  static BepPrior constant(double a, double b, int p, int q, int c_value, const Grid& grid) {
    BepPrior prior;
    prior.a = a;
    prior.b = b;
    prior.p = p;
    prior.q = q;
    prior.c = Matrix<int>(grid.n_ages, grid.n_total_times(), c_value);
    prior.validate(grid);
    return prior;
  }

  void validate(const Grid& grid) const {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("prior shapes a, b must be positive");
    if (p < 0 || q < 0) throw ConfigError("dependence orders p, q must be non-negative");
    if (c.rows() != grid.n_ages || c.cols() != grid.n_total_times()) {
      throw ConfigError("c matrix dimensions do not match the extended grid");
    }
    for (int v : c.data()) {
      if (v < 0) throw ConfigError("c entries are binomial trial counts and must be >= 0");
    }
  }

  bool constant_c() const {
    for (int v : c.data())
      if (v != c.data().front()) return false;
    return true;
  }

  int sum_c_over(const Neighborhood& nb) const {
    int s = 0;
    for (const Cell& cell : nb.cells) s += c(cell.x, cell.t);
    return s;
  }
};

inline Neighborhood neighborhood(int x, int t, const BepPrior& prior, const Grid& grid) {
  return neighborhood(x, t, prior.p, prior.q, grid);
}

inline Neighborhood reverse_neighborhood(int x, int t, const BepPrior& prior, const Grid& grid) {
  return reverse_neighborhood(x, t, prior.p, prior.q, grid);
}

struct PriorDraw {
  double omega = 0.0;
  Matrix<int> upsilon;
  Matrix<double> pi;
};

/// One forward draw from the hierarchy over the full extended grid.
/// All pi entries come back strictly inside (0,1).
inline PriorDraw sample_prior(const BepPrior& prior, const Grid& grid, Rng& rng) {
  prior.validate(grid);
  const int nx = grid.n_ages;
  const int nt = grid.n_total_times();

  PriorDraw draw;
  draw.omega = rng.beta(prior.a, prior.b);
  draw.upsilon = Matrix<int>(nx, nt);
  draw.pi = Matrix<double>(nx, nt);

  for (int x = 1; x <= nx; ++x)
    for (int t = 1; t <= nt; ++t)
      draw.upsilon(x, t) = rng.binomial(prior.c(x, t), draw.omega);

  for (int x = 1; x <= nx; ++x) {
    for (int t = 1; t <= nt; ++t) {
      int sum_u = 0;
      int sum_c = 0;
      for (const Cell& cell : neighborhood(x, t, prior, grid).cells) {
        sum_u += draw.upsilon(cell.x, cell.t);
        sum_c += prior.c(cell.x, cell.t);
      }
      double pi = rng.beta(prior.a + sum_u, prior.b + (sum_c - sum_u));
      draw.pi(x, t) = clamp_unit(pi);
    }
  }
  return draw;
}

/// Closed-form correlation between two distinct cells. Identical cells are
/// special-cased to 1 (the pairwise formula applied to a cell against itself
/// is a variance decomposition, not a correlation).
inline double prior_correlation(Cell cell1, Cell cell2, const BepPrior& prior, const Grid& grid) {
  grid.require_inside(cell1.x, cell1.t);
  grid.require_inside(cell2.x, cell2.t);
  if (cell1 == cell2) return 1.0;

  const Neighborhood nb1 = neighborhood(cell1.x, cell1.t, prior, grid);
  const Neighborhood nb2 = neighborhood(cell2.x, cell2.t, prior, grid);

  int sum_shared = 0;
  for (const Cell& cell : nb1.cells) {
    if (nb2.contains(cell.x, cell.t)) sum_shared += prior.c(cell.x, cell.t);
  }
  const double s1 = prior.sum_c_over(nb1);
  const double s2 = prior.sum_c_over(nb2);
  const double ab = prior.a + prior.b;
  return (ab * sum_shared + s1 * s2) / ((ab + s1) * (ab + s2));
}

/// Stationary simplification for constant c and interior cells; depends only
/// on how many cells the two neighborhoods share.
inline double stationary_correlation(int overlap_count, const BepPrior& prior) {
  if (!prior.constant_c()) {
    throw ConfigError("stationary_correlation requires a constant c matrix");
  }
  if (overlap_count < 0) throw ConfigError("overlap count must be >= 0");
  const int c = prior.c.empty() ? 0 : prior.c.data().front();
  const double ab = prior.a + prior.b;
  // arithmetic mirrors prior_correlation term by term so interior pairs agree exactly
  const double shared = static_cast<double>(overlap_count * c);
  const double full = static_cast<double>((prior.p + prior.q + 1) * c);
  return (ab * shared + full * full) / ((ab + full) * (ab + full));
}

/// Plain-text configuration: `key = value` lines, '#' comments. Recognized
/// keys: a, b, p, q, and either a scalar c or c_matrix (path to a CSV of
/// per-cell counts).
inline BepPrior load_prior_config(const std::string& path, const Grid& grid) {
  auto in = csv::open_input(path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = csv::strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value' in " + path + ": " + line);
    kv[csv::strip(line.substr(0, eq))] = csv::strip(line.substr(eq + 1));
  }

  BepPrior prior;
  if (kv.count("a")) prior.a = csv::parse_double(kv["a"], path);
  if (kv.count("b")) prior.b = csv::parse_double(kv["b"], path);
  if (kv.count("p")) prior.p = static_cast<int>(csv::parse_long(kv["p"], path));
  if (kv.count("q")) prior.q = static_cast<int>(csv::parse_long(kv["q"], path));
  if (kv.count("c") && kv.count("c_matrix")) {
    throw ConfigError("specify either scalar c or c_matrix, not both, in " + path);
  }
  if (kv.count("c_matrix")) {
    prior.c = csv::read_matrix<int>(kv["c_matrix"]);
    if (prior.c.rows() != grid.n_ages) {
      throw ConfigError("c_matrix row count does not match n_ages");
    }
    // a data-extent c matrix is zero-padded over forecast columns
    if (prior.c.cols() < grid.n_total_times()) {
      Matrix<int> padded(grid.n_ages, grid.n_total_times(), 0);
      for (int x = 1; x <= prior.c.rows(); ++x)
        for (int t = 1; t <= prior.c.cols(); ++t)
          padded(x, t) = prior.c(x, t);
      prior.c = padded;
    }
  } else {
    int c_value = kv.count("c") ? static_cast<int>(csv::parse_long(kv["c"], path)) : 0;
    prior.c = Matrix<int>(grid.n_ages, grid.n_total_times(), c_value);
  }
  prior.validate(grid);
  return prior;
}

}  // namespace bephaz
