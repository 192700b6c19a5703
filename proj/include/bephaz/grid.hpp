#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bephaz/errors.hpp"

namespace bephaz {

struct Cell {
  int x = 0;  // age index, 1-based
  int t = 0;  // time index, 1-based

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.x == b.x && a.t == b.t;
  }
  friend bool operator<(const Cell& a, const Cell& b) {
    return a.x != b.x ? a.x < b.x : a.t < b.t;
  }
};

/// Age x time lattice. Ages run 1..n_ages, times 1..n_times + n_forecast.
/// Forecast columns are ordinary cells that carry no data.
struct Grid {
  int n_ages = 1;
  int n_times = 1;
  int n_forecast = 0;

  Grid() = default;
  Grid(int ages, int times, int forecast = 0)
      : n_ages(ages), n_times(times), n_forecast(forecast) {
    if (n_ages < 1 || n_times < 1 || n_forecast < 0) {
      throw ConfigError("grid dimensions must satisfy n_ages >= 1, n_times >= 1, n_forecast >= 0");
    }
  }

  int n_total_times() const { return n_times + n_forecast; }
  int n_cells() const { return n_ages * n_total_times(); }

  bool contains(int x, int t) const {
    return x >= 1 && x <= n_ages && t >= 1 && t <= n_total_times();
  }
  bool is_forecast(int t) const { return t > n_times; }

  void require_inside(int x, int t) const {
    if (!contains(x, t)) {
      throw ConfigError("cell (" + std::to_string(x) + "," + std::to_string(t) +
                        ") outside grid " + std::to_string(n_ages) + "x" +
                        std::to_string(n_total_times()));
    }
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ages == b.n_ages && a.n_times == b.n_times && a.n_forecast == b.n_forecast;
  }
};

struct Neighborhood {
  std::vector<Cell> cells;

  bool contains(int x, int t) const {
    return std::find(cells.begin(), cells.end(), Cell{x, t}) != cells.end();
  }
  int size() const { return static_cast<int>(cells.size()); }
};

/// The anchor (x,t) plus up to p age lags and q time lags. Lags falling
/// outside the grid are dropped; they carry c = 0 and contribute nothing.
inline Neighborhood neighborhood(int x, int t, int p, int q, const Grid& grid) {
  grid.require_inside(x, t);
  Neighborhood nb;
  nb.cells.reserve(static_cast<std::size_t>(p + q + 1));
  nb.cells.push_back({x, t});
  for (int lag = 1; lag <= p && x - lag >= 1; ++lag) nb.cells.push_back({x - lag, t});
  for (int lag = 1; lag <= q && t - lag >= 1; ++lag) nb.cells.push_back({x, t - lag});
  return nb;
}

/// Cells whose neighborhood contains (x,t): the anchor plus forward age and
/// time shifts, clipped to the extended grid.
inline Neighborhood reverse_neighborhood(int x, int t, int p, int q, const Grid& grid) {
  grid.require_inside(x, t);
  Neighborhood nb;
  nb.cells.reserve(static_cast<std::size_t>(p + q + 1));
  nb.cells.push_back({x, t});
  for (int lag = 1; lag <= p && x + lag <= grid.n_ages; ++lag) nb.cells.push_back({x + lag, t});
  for (int lag = 1; lag <= q && t + lag <= grid.n_total_times(); ++lag) nb.cells.push_back({x, t + lag});
  return nb;
}

}  // namespace bephaz
