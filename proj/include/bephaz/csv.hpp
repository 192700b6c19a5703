#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bephaz/errors.hpp"
#include "bephaz/matrix.hpp"

namespace bephaz::csv {

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file: " + path);
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

inline double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    double v = std::stod(strip(s), &pos);
    if (pos != strip(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number '" + s + "' in " + context);
  }
}

inline long parse_long(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    long v = std::stol(strip(s), &pos);
    if (pos != strip(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse integer '" + s + "' in " + context);
  }
}

/// Headerless numeric matrix, rows = ages ascending, columns = times ascending.
template <typename T>
Matrix<T> read_matrix(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::vector<T>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    std::vector<T> row;
    for (const auto& f : split_line(line)) {
      if constexpr (std::is_integral_v<T>) {
        row.push_back(static_cast<T>(parse_long(f, path)));
      } else {
        row.push_back(static_cast<T>(parse_double(f, path)));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError("ragged rows in matrix file " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("empty matrix file " + path);
  Matrix<T> m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int x = 1; x <= m.rows(); ++x)
    for (int t = 1; t <= m.cols(); ++t)
      m(x, t) = rows[x - 1][t - 1];
  return m;
}

template <typename T>
void write_matrix(const Matrix<T>& m, const std::string& path) {
  auto out = open_output(path);
  out.precision(17);
  for (int x = 1; x <= m.rows(); ++x) {
    for (int t = 1; t <= m.cols(); ++t) {
      if (t > 1) out << ',';
      out << m(x, t);
    }
    out << '\n';
  }
}

}  // namespace bephaz::csv
