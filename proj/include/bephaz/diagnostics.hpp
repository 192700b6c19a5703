#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "bephaz/csv.hpp"
#include "bephaz/errors.hpp"

namespace bephaz {

struct Trace {
  std::vector<double> values;
  std::string label;

  void validate() const {
    if (values.empty()) throw ConfigError("trace '" + label + "' is empty");
    for (double v : values) {
      if (!std::isfinite(v)) throw ConfigError("trace '" + label + "' has non-finite values");
    }
  }
};

inline std::vector<double> ergodic_means(const Trace& trace) {
  trace.validate();
  std::vector<double> out(trace.values.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < trace.values.size(); ++k) {
    sum += trace.values[k];
    out[k] = sum / static_cast<double>(k + 1);
  }
  return out;
}

/// Sample autocorrelation, biased normalization by the lag-0 sum of squares.
inline std::vector<double> acf(const Trace& trace, int max_lag,
                               std::ostream* warnings = &std::cerr) {
  trace.validate();
  const std::size_t n = trace.values.size();
  if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= n) {
    throw ConfigError("acf needs 1 <= max_lag < trace length");
  }
  double mean = 0.0;
  for (double v : trace.values) mean += v;
  mean /= static_cast<double>(n);

  double c0 = 0.0;
  for (double v : trace.values) c0 += (v - mean) * (v - mean);

  std::vector<double> out(static_cast<std::size_t>(max_lag) + 1, 0.0);
  out[0] = 1.0;
  if (c0 == 0.0) {
    if (warnings) *warnings << "warning: zero-variance trace '" << trace.label << "' in acf\n";
    return out;
  }
  for (int k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) {
      ck += (trace.values[i] - mean) * (trace.values[i + k] - mean);
    }
    out[static_cast<std::size_t>(k)] = ck / c0;
  }
  return out;
}

struct Histogram {
  std::vector<double> edges;        // bins + 1 edges
  std::vector<double> frequencies;  // sums to 1
};

inline Histogram histogram(const Trace& trace, int bins) {
  trace.validate();
  if (bins < 1) throw ConfigError("histogram needs bins >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(trace.values.begin(), trace.values.end());
  const double lo = *lo_it, hi = *hi_it;

  Histogram h;
  if (lo == hi) {
    h.edges = {lo, hi};
    h.frequencies = {1.0};
    return h;
  }
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) {
    h.edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  }
  h.frequencies.assign(static_cast<std::size_t>(bins), 0.0);
  const double weight = 1.0 / static_cast<double>(trace.values.size());
  for (double v : trace.values) {
    int bin = static_cast<int>((v - lo) / (hi - lo) * bins);
    bin = std::clamp(bin, 0, bins - 1);
    h.frequencies[static_cast<std::size_t>(bin)] += weight;
  }
  return h;
}

// ---- CSV interfaces ----

inline void write_trace_csv(const Trace& trace, const std::string& path) {
  auto out = csv::open_output(path);
  out.precision(17);
  out << "iter,value\n";
  for (std::size_t i = 0; i < trace.values.size(); ++i)
    out << (i + 1) << ',' << trace.values[i] << '\n';
}

inline void write_ergodic_csv(const std::vector<double>& means, const std::string& path) {
  auto out = csv::open_output(path);
  out.precision(17);
  out << "iter,ergodic_mean\n";
  for (std::size_t i = 0; i < means.size(); ++i) out << (i + 1) << ',' << means[i] << '\n';
}

inline void write_acf_csv(const std::vector<double>& values, const std::string& path) {
  auto out = csv::open_output(path);
  out.precision(17);
  out << "lag,acf\n";
  for (std::size_t k = 0; k < values.size(); ++k) out << k << ',' << values[k] << '\n';
}

inline void write_histogram_csv(const Histogram& h, const std::string& path) {
  auto out = csv::open_output(path);
  out.precision(17);
  out << "bin_low,bin_high,freq\n";
  for (std::size_t i = 0; i < h.frequencies.size(); ++i)
    out << h.edges[i] << ',' << h.edges[i + 1] << ',' << h.frequencies[i] << '\n';
}

}  // namespace bephaz
