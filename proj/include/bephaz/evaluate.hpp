#pragma once

#include <cmath>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "bephaz/data.hpp"
#include "bephaz/errors.hpp"
#include "bephaz/gibbs.hpp"

namespace bephaz {

/// L-measure: per-cell posterior variance plus nu-weighted squared bias
/// against a reference hazard, averaged over the cells of a time window.
struct LMeasureReport {
  double nu = 0.5;
  double value = 0.0;
  double variance_part = 0.0;
  double bias_part = 0.0;  // unweighted; value = variance_part + nu * bias_part
  int t_begin = 1;
  int t_end = 1;
  int cells_used = 0;
  int cells_excluded = 0;  // reference undefined (e.g. empty risk set)
};

inline LMeasureReport l_measure(const PosteriorSummary& summary,
                                const Matrix<double>& reference,
                                double nu, int t_begin, int t_end,
                                const Matrix<unsigned char>* defined = nullptr) {
  if (nu < 0.0 || nu > 1.0) throw ConfigError("nu must lie in [0,1]");
  const Grid& grid = summary.grid;
  if (t_begin < 1 || t_end > grid.n_total_times() || t_begin > t_end) {
    throw ConfigError("l_measure window outside the extended time axis");
  }
  if (reference.rows() < grid.n_ages || reference.cols() < t_end) {
    throw ConfigError("reference matrix does not cover the requested window");
  }

  LMeasureReport report;
  report.nu = nu;
  report.t_begin = t_begin;
  report.t_end = t_end;
  double var_sum = 0.0, bias_sum = 0.0;
  for (int x = 1; x <= grid.n_ages; ++x) {
    for (int t = t_begin; t <= t_end; ++t) {
      const bool have_ref = defined ? (*defined)(x, t) != 0 : std::isfinite(reference(x, t));
      if (!have_ref) {
        ++report.cells_excluded;
        continue;
      }
      var_sum += summary.cell_variance(x, t);
      const double bias = summary.mean(x, t) - reference(x, t);
      bias_sum += bias * bias;
      ++report.cells_used;
    }
  }
  if (report.cells_used == 0) throw ConfigError("no usable cells in l_measure window");
  report.variance_part = var_sum / report.cells_used;
  report.bias_part = bias_sum / report.cells_used;
  report.value = report.variance_part + nu * report.bias_part;
  return report;
}

/// Prior-specification sweep over (p, q, c) triples, one chain each, with
/// per-row seeds derived from the master seed so rows are reproducible
/// independently of execution order.
struct SweepDesign {
  std::vector<int> p_values;
  std::vector<int> q_values;
  std::vector<int> c_values;
  double a = 0.001;
  double b = 0.001;
  double nu = 0.5;
};

struct SweepRow {
  int p = 0, q = 0, c = 0;
  bool ok = false;
  std::string error;
  LMeasureReport in_sample;
  LMeasureReport out_sample;  // valid only when the grid has forecast columns
  bool has_out = false;
};

inline std::vector<SweepRow> sweep(const SweepDesign& design, const Grid& grid,
                                   const SufficientStats& stats,
                                   const Matrix<double>& reference,
                                   const ChainConfig& config, int jobs = 1,
                                   const Matrix<unsigned char>* defined = nullptr) {
  if (design.p_values.empty() || design.q_values.empty() || design.c_values.empty()) {
    throw ConfigError("sweep needs at least one value for each of p, q, c");
  }
  std::vector<SweepRow> rows;
  for (int p : design.p_values)
    for (int q : design.q_values)
      for (int c : design.c_values)
        rows.push_back({p, q, c});

  auto run_row = [&](std::size_t i) {
    SweepRow& row = rows[i];
    try {
      BepPrior prior = BepPrior::constant(design.a, design.b, row.p, row.q, row.c, grid);
      ChainConfig cfg = config;
      cfg.seed = derive_seed(config.seed, i);
      PosteriorSummary summary = run_chain(prior, grid, stats, cfg);
      row.in_sample = l_measure(summary, reference, design.nu, 1, grid.n_times, defined);
      if (grid.n_forecast > 0) {
        row.out_sample = l_measure(summary, reference, design.nu,
                                   grid.n_times + 1, grid.n_total_times(), defined);
        row.has_out = true;
      }
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) run_row(i);
  } else {
    std::vector<std::thread> workers;
    std::size_t next = 0;
    std::mutex mutex;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard<std::mutex> lock(mutex);
            if (next >= rows.size()) return;
            i = next++;
          }
          run_row(i);
        }
      });
    }
    for (auto& w : workers) w.join();
  }
  return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  auto out = csv::open_output(path);
  out.precision(17);
  out << "p,q,c,window,nu,variance_part,bias_part,l_measure\n";
  for (const auto& row : rows) {
    if (!row.ok) {
      out << row.p << ',' << row.q << ',' << row.c << ",error,,,," << '\n';
      continue;
    }
    out << row.p << ',' << row.q << ',' << row.c << ",in," << row.in_sample.nu << ','
        << row.in_sample.variance_part << ',' << row.in_sample.bias_part << ','
        << row.in_sample.value << '\n';
    if (row.has_out) {
      out << row.p << ',' << row.q << ',' << row.c << ",out," << row.out_sample.nu << ','
          << row.out_sample.variance_part << ',' << row.out_sample.bias_part << ','
          << row.out_sample.value << '\n';
    }
  }
}

}  // namespace bephaz
