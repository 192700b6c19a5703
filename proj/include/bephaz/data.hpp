#pragma once

#include <cmath>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "bephaz/csv.hpp"
#include "bephaz/errors.hpp"
#include "bephaz/grid.hpp"
#include "bephaz/matrix.hpp"

namespace bephaz {

struct SurvivalRecord {
  int age = 0;      // observed or censoring age
  int time = 0;     // period
  bool exact = true;  // true = death observed, false = right-censored

  friend bool operator==(const SurvivalRecord& a, const SurvivalRecord& b) {
    return a.age == b.age && a.time == b.time && a.exact == b.exact;
  }
};

/// Deaths r and at-risk counts m per cell, zero over forecast columns.
/// This is the entire data footprint of the likelihood.
struct SufficientStats {
  Matrix<int> deaths;
  Matrix<int> at_risk;

  SufficientStats() = default;
  explicit SufficientStats(const Grid& grid)
      : deaths(grid.n_ages, grid.n_total_times(), 0),
        at_risk(grid.n_ages, grid.n_total_times(), 0) {}
};

struct LifeTable {
  Matrix<int> deaths;      // raw death counts per age/time group
  Matrix<int> population;  // population sizes Q
  double scale = 1.0;      // counts are divided by this before use
};

/// Exact tallying of individual records into (r, m). A censored record at age
/// x contributes to the risk sets of all ages <= x but never to the deaths.
inline SufficientStats aggregate(const std::vector<SurvivalRecord>& records, const Grid& grid) {
  SufficientStats stats(grid);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SurvivalRecord& rec = records[i];
    if (rec.age < 1 || rec.age > grid.n_ages || rec.time < 1 || rec.time > grid.n_times) {
      throw DataError("record " + std::to_string(i) + " outside grid: age=" +
                      std::to_string(rec.age) + " time=" + std::to_string(rec.time));
    }
    if (rec.exact) ++stats.deaths(rec.age, rec.time);
    for (int x = 1; x <= rec.age; ++x) ++stats.at_risk(x, rec.time);
  }
  return stats;
}

/// Rebuild (r, m) from aggregated life-table counts: m is the reverse
/// cumulative sum of population over age; both are divided by the scale
/// constant and rounded. Rounding can leave r slightly above m, which is
/// clamped; a gap beyond rounding slack is a data-integrity failure.
inline SufficientStats from_life_table(const LifeTable& table, const Grid& grid,
                                       std::ostream* warnings = &std::cerr) {
  if (table.deaths.rows() != grid.n_ages || table.deaths.cols() != grid.n_times ||
      !table.deaths.same_shape(table.population)) {
    throw DataError("life table dimensions do not match the grid");
  }
  if (!(table.scale > 0.0)) throw DataError("life table scale must be positive");

  SufficientStats stats(grid);
  for (int t = 1; t <= grid.n_times; ++t) {
    long cum = 0;
    for (int x = grid.n_ages; x >= 1; --x) {
      if (table.population(x, t) < 0 || table.deaths(x, t) < 0) {
        throw DataError("negative life table count at age " + std::to_string(x) +
                        " time " + std::to_string(t));
      }
      cum += table.population(x, t);
      const double r_raw = table.deaths(x, t) / table.scale;
      const double m_raw = static_cast<double>(cum) / table.scale;
      int r = static_cast<int>(std::llround(r_raw));
      int m = static_cast<int>(std::llround(m_raw));
      if (r > m) {
        if (r_raw > m_raw + 1.0) {
          throw DataError("deaths exceed at-risk beyond rounding slack at age " +
                          std::to_string(x) + " time " + std::to_string(t));
        }
        if (warnings) {
          *warnings << "warning: rounded deaths clamped to at-risk at (" << x << "," << t << ")\n";
        }
        r = m;
      }
      stats.deaths(x, t) = r;
      stats.at_risk(x, t) = m;
    }
  }
  return stats;
}

/// Frequentist nonparametric hazard r/m with an explicit defined mask for
/// cells nobody reached (m = 0).
struct HazardEstimate {
  Matrix<double> value;
  Matrix<unsigned char> defined;

  bool is_defined(int x, int t) const { return defined(x, t) != 0; }
};

inline HazardEstimate np_hazard(const SufficientStats& stats) {
  HazardEstimate est;
  est.value = Matrix<double>(stats.deaths.rows(), stats.deaths.cols(),
                             std::numeric_limits<double>::quiet_NaN());
  est.defined = Matrix<unsigned char>(stats.deaths.rows(), stats.deaths.cols(), 0);
  for (int x = 1; x <= stats.deaths.rows(); ++x) {
    for (int t = 1; t <= stats.deaths.cols(); ++t) {
      if (stats.at_risk(x, t) > 0) {
        est.value(x, t) = static_cast<double>(stats.deaths(x, t)) / stats.at_risk(x, t);
        est.defined(x, t) = 1;
      }
    }
  }
  return est;
}

// ---- CSV interfaces ----

inline std::vector<SurvivalRecord> read_records_csv(const std::string& path) {
  auto in = csv::open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty records file " + path);
  if (csv::strip(line) != "age,time,exact") {
    throw ConfigError("records file must start with header 'age,time,exact': " + path);
  }
  std::vector<SurvivalRecord> records;
  while (std::getline(in, line)) {
    if (csv::strip(line).empty()) continue;
    auto fields = csv::split_line(line);
    if (fields.size() != 3) throw ConfigError("expected 3 fields per record in " + path);
    SurvivalRecord rec;
    rec.age = static_cast<int>(csv::parse_long(fields[0], path));
    rec.time = static_cast<int>(csv::parse_long(fields[1], path));
    long exact = csv::parse_long(fields[2], path);
    if (exact != 0 && exact != 1) throw ConfigError("exact flag must be 0 or 1 in " + path);
    rec.exact = exact == 1;
    records.push_back(rec);
  }
  return records;
}

inline void write_records_csv(const std::vector<SurvivalRecord>& records, const std::string& path) {
  auto out = csv::open_output(path);
  out << "age,time,exact\n";
  for (const auto& rec : records) {
    out << rec.age << ',' << rec.time << ',' << (rec.exact ? 1 : 0) << '\n';
  }
}

inline void write_stats_csv(const SufficientStats& stats, const std::string& path) {
  auto out = csv::open_output(path);
  out << "age,time,deaths,at_risk\n";
  for (int x = 1; x <= stats.deaths.rows(); ++x)
    for (int t = 1; t <= stats.deaths.cols(); ++t)
      out << x << ',' << t << ',' << stats.deaths(x, t) << ',' << stats.at_risk(x, t) << '\n';
}

}  // namespace bephaz
