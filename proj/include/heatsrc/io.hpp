#pragma once

// CSV readers for sampled inputs and writers for coefficient tables and
// lattice samples.
//
//   time profile:  header `t,value`, times strictly increasing from 0
//   spatial grid:  header `x,y,value`, one row per node of a uniform lattice
//   coefficients:  header `m,n,kappa,value`

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heatsrc/model.hpp"

namespace heatsrc {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double parse_double(std::string_view field, const std::string& source, std::size_t line) {
  double value = 0.0;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty())
    throw ParseError(source, line, "cannot parse number '" + std::string(field) + "'");
  if (!std::isfinite(value)) throw ParseError(source, line, "non-finite value '" + std::string(field) + "'");
  return value;
}

/// Reads data rows after checking the header; returns (line number, fields).
inline std::vector<std::pair<std::size_t, std::vector<double>>> read_rows(std::istream& in, const std::string& source,
                                                                          const std::vector<std::string>& header) {
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::vector<std::pair<std::size_t, std::vector<double>>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto fields = split_commas(t);
    if (!seen_header) {
      bool ok = fields.size() == header.size();
      for (std::size_t i = 0; ok && i < header.size(); ++i) ok = fields[i] == header[i];
      if (!ok) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw ParseError(source, line_no, "expected header '" + expected + "'");
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size())
      throw ParseError(source, line_no,
                       "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    std::vector<double> values;
    values.reserve(fields.size());
    for (auto f : fields) values.push_back(parse_double(f, source, line_no));
    rows.emplace_back(line_no, std::move(values));
  }
  if (!seen_header) throw ParseError(source, line_no, "missing header");
  return rows;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

}  // namespace detail

inline TimeProfile read_time_profile_csv(std::istream& in, const std::string& source = "<time profile>") {
  const auto rows = detail::read_rows(in, source, {"t", "value"});
  if (rows.size() < 2) throw ParseError(source, rows.empty() ? 1 : rows.front().first, "need at least two samples");
  std::vector<double> times;
  std::vector<double> values;
  for (const auto& [line, v] : rows) {
    if (times.empty() && v[0] != 0.0) throw ParseError(source, line, "first sample time must be 0");
    if (!times.empty() && !(v[0] > times.back())) throw ParseError(source, line, "sample times must increase strictly");
    times.push_back(v[0]);
    values.push_back(v[1]);
  }
  return TimeProfile::sampled(std::move(times), std::move(values));
}

inline TimeProfile read_time_profile_csv(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_time_profile_csv(in, path.string());
}

/// Rows may come in any order but must cover every node of a uniform
/// lattice on [0,1]^2 exactly once.
inline SpatialField read_grid_csv(std::istream& in, const std::string& source = "<grid>") {
  const auto rows = detail::read_rows(in, source, {"x", "y", "value"});
  if (rows.empty()) throw ParseError(source, 1, "no data rows");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [line, v] : rows) {
    xs.push_back(v[0]);
    ys.push_back(v[1]);
  }
  auto distinct = [](std::vector<double> a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
  };
  xs = distinct(xs);
  ys = distinct(ys);
  const int nx = static_cast<int>(xs.size()) - 1;
  const int ny = static_cast<int>(ys.size()) - 1;
  if (nx < 2 || ny < 2) throw ParseError(source, rows.front().first, "grid needs at least 3 distinct coordinates per axis");
  constexpr double tol = 1e-9;
  auto index_of = [&](double v, int n, std::size_t line, const char* axis) {
    const double scaled = v * n;
    const double rounded = std::round(scaled);
    if (std::fabs(scaled - rounded) > tol * n || rounded < 0 || rounded > n)
      throw ParseError(source, line, std::string(axis) + " coordinate " + std::to_string(v) +
                                         " is not on a uniform lattice over [0,1]");
    return static_cast<int>(rounded);
  };
  GridSamples grid{nx, ny, std::vector<double>(static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1))};
  std::vector<std::size_t> seen(grid.values.size(), 0);
  for (const auto& [line, v] : rows) {
    const int i = index_of(v[0], nx, line, "x");
    const int j = index_of(v[1], ny, line, "y");
    const auto k = static_cast<std::size_t>(i) * static_cast<std::size_t>(ny + 1) + static_cast<std::size_t>(j);
    if (seen[k] != 0)
      throw ParseError(source, line, "duplicate node (first given on line " + std::to_string(seen[k]) + ")");
    seen[k] = line;
    grid.values[k] = v[2];
  }
  if (rows.size() != grid.values.size())
    throw ParseError(source, rows.back().first,
                     "grid is incomplete: " + std::to_string(rows.size()) + " rows for " +
                         std::to_string(grid.values.size()) + " lattice nodes");
  return SpatialField::grid(std::move(grid));
}

inline SpatialField read_grid_csv(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_grid_csv(in, path.string());
}

/// printf-style "%.<digits>g".
inline std::string format_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline void write_coefficients_csv(std::ostream& out, const CosineCoefficients& c) {
  out << "m,n,kappa,value\n";
  for (int m = 0; m <= c.max_degree(); ++m)
    for (int n = 0; n <= c.max_degree(); ++n)
      out << m << ',' << n << ',' << kappa(m, n) << ',' << format_g(c(m, n), 17) << '\n';
}

/// One row per lattice node (i/(N-1), j/(N-1)), x outer, y inner; values
/// with 9 significant digits.
inline void write_grid_csv(std::ostream& out, int resolution, const std::vector<std::string>& names,
                           const std::vector<const SpatialField*>& fields) {
  if (resolution < 2) throw std::invalid_argument("write_grid_csv: resolution must be >= 2");
  if (names.size() != fields.size()) throw std::invalid_argument("write_grid_csv: names and fields differ in length");
  out << "x,y";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (int i = 0; i < resolution; ++i) {
    const double x = static_cast<double>(i) / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double y = static_cast<double>(j) / (resolution - 1);
      out << format_g(x, 9) << ',' << format_g(y, 9);
      for (const auto* f : fields) out << ',' << format_g((*f)(x, y), 9);
      out << '\n';
    }
  }
}

inline void write_time_profile_csv(std::ostream& out, const TimeProfile& phi, int samples) {
  if (samples < 2) throw std::invalid_argument("write_time_profile_csv: need at least two samples");
  out << "t,value\n";
  for (int i = 0; i < samples; ++i) {
    const double t = i == samples - 1 ? phi.horizon() : phi.horizon() * i / (samples - 1);
    out << format_g(t, 17) << ',' << format_g(phi(t), 17) << '\n';
  }
}

/// Samples a field on the (N x N) lattice in the `x,y,value` layout.
inline void write_field_csv(std::ostream& out, const SpatialField& w, int resolution) {
  if (resolution < 2) throw std::invalid_argument("write_field_csv: resolution must be >= 2");
  out << "x,y,value\n";
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j) {
      const double x = static_cast<double>(i) / (resolution - 1);
      const double y = static_cast<double>(j) / (resolution - 1);
      out << format_g(x, 17) << ',' << format_g(y, 17) << ',' << format_g(w(x, y), 17) << '\n';
    }
}

}  // namespace heatsrc
