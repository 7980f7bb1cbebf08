#pragma once

// Problem data: the time factor of the source, functions on the unit square,
// cosine-coefficient tables, and the L1 / L2 / H1 norms used by the
// error estimates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heatsrc/numerics.hpp"

namespace heatsrc {

/// Multiplicity weight of the cosine mode (m, n): 1, 2 or 4.
inline int kappa(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("kappa: indices must be non-negative");
  if (m == 0 && n == 0) return 1;
  if (m == 0 || n == 0) return 2;
  return 4;
}

/// Admissibility metadata for the time factor: near t = 0 the profile keeps
/// one sign and |phi(t)| >= lambda_bound * t^theta on (0, T0).
struct ConditionH {
  double theta = 0.0;
  double lambda_bound = 1.0;
  double T0 = 1.0;
};

class TimeProfile {
public:
  enum class Kind { analytic, sampled };
  using Function = std::function<double(double)>;

  /// Closed-form profile. Builtin profiles are analytic profiles whose name
  /// is registered in problems.hpp.
  static TimeProfile analytic(std::string name, double horizon, Function fn,
                              std::optional<ConditionH> condition = std::nullopt) {
    if (!(horizon > 0.0)) throw std::invalid_argument("TimeProfile: horizon must be positive");
    if (!fn) throw std::invalid_argument("TimeProfile: empty function");
    TimeProfile p;
    p.kind_ = Kind::analytic;
    p.name_ = std::move(name);
    p.horizon_ = horizon;
    p.fn_ = std::move(fn);
    p.set_condition(condition);
    return p;
  }

  /// Piecewise-linear profile through (times[i], values[i]); the horizon is
  /// the last sample time.
  static TimeProfile sampled(std::vector<double> times, std::vector<double> values,
                             std::optional<ConditionH> condition = std::nullopt) {
    if (times.size() != values.size())
      throw std::invalid_argument("TimeProfile: times and values differ in length");
    if (times.size() < 2) throw std::invalid_argument("TimeProfile: need at least two samples");
    if (times.front() != 0.0) throw std::invalid_argument("TimeProfile: samples must start at t = 0");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1]))
        throw std::invalid_argument("TimeProfile: sample times must be strictly increasing (index " +
                                    std::to_string(i) + ")");
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!std::isfinite(values[i]))
        throw std::invalid_argument("TimeProfile: non-finite sample value at index " + std::to_string(i));
    TimeProfile p;
    p.kind_ = Kind::sampled;
    p.name_ = "sampled";
    p.horizon_ = times.back();
    p.times_ = std::move(times);
    p.values_ = std::move(values);
    p.set_condition(condition);
    return p;
  }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double horizon() const noexcept { return horizon_; }
  const std::optional<ConditionH>& condition_h() const noexcept { return condition_; }
  const std::vector<double>& sample_times() const noexcept { return times_; }
  const std::vector<double>& sample_values() const noexcept { return values_; }

  double operator()(double t) const {
    if (kind_ == Kind::analytic) return fn_(t);
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const auto hi = static_cast<std::size_t>(it - times_.begin());
    const std::size_t lo = hi - 1;
    const double s = (t - times_[lo]) / (times_[hi] - times_[lo]);
    return values_[lo] + s * (values_[hi] - values_[lo]);
  }

  /// Sample times, where the piecewise-linear extension has kinks.
  std::span<const double> breakpoints() const noexcept { return times_; }

  /// The same profile multiplied by `factor`.
  TimeProfile scaled(double factor) const {
    TimeProfile p = *this;
    if (kind_ == Kind::analytic) {
      p.fn_ = [fn = fn_, factor](double t) { return factor * fn(t); };
      p.name_ = name_ + "*scaled";
    } else {
      for (double& v : p.values_) v *= factor;
    }
    return p;
  }

private:
  TimeProfile() = default;

  void set_condition(const std::optional<ConditionH>& c) {
    if (c) {
      if (!(c->theta >= 0.0)) throw std::invalid_argument("ConditionH: theta must be >= 0");
      if (!(c->lambda_bound > 0.0)) throw std::invalid_argument("ConditionH: lambda_bound must be > 0");
      if (!(c->T0 > 0.0 && c->T0 <= horizon_))
        throw std::invalid_argument("ConditionH: T0 must lie in (0, horizon]");
    }
    condition_ = c;
  }

  Kind kind_ = Kind::analytic;
  std::string name_;
  double horizon_ = 1.0;
  Function fn_;
  std::vector<double> times_;
  std::vector<double> values_;
  std::optional<ConditionH> condition_;
};

/// Dense table F(m, n) for 0 <= m, n <= M.
class CosineCoefficients {
public:
  CosineCoefficients() : CosineCoefficients(0) {}

  explicit CosineCoefficients(int max_degree)
      : max_degree_(max_degree),
        table_(static_cast<std::size_t>(checked_side(max_degree)) * static_cast<std::size_t>(max_degree + 1),
               0.0) {}

  CosineCoefficients(int max_degree, std::vector<double> table) : max_degree_(max_degree) {
    const auto side = static_cast<std::size_t>(checked_side(max_degree));
    if (table.size() != side * side)
      throw std::invalid_argument("CosineCoefficients: table size does not match (M+1)^2");
    for (double v : table)
      if (!std::isfinite(v)) throw std::invalid_argument("CosineCoefficients: non-finite entry");
    table_ = std::move(table);
  }

  int max_degree() const noexcept { return max_degree_; }

  double operator()(int m, int n) const { return table_[index(m, n)]; }

  void set(int m, int n, double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("CosineCoefficients: non-finite entry");
    table_[index(m, n)] = value;
  }

  /// Entry (m, n), or 0 outside the stored square.
  double get_or_zero(int m, int n) const {
    if (m < 0 || n < 0 || m > max_degree_ || n > max_degree_) return 0.0;
    return table_[index(m, n)];
  }

  const std::vector<double>& table() const noexcept { return table_; }

  friend bool operator==(const CosineCoefficients&, const CosineCoefficients&) = default;

private:
  static int checked_side(int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("CosineCoefficients: max degree must be >= 0");
    return max_degree + 1;
  }

  std::size_t index(int m, int n) const {
    if (m < 0 || n < 0 || m > max_degree_ || n > max_degree_)
      throw std::out_of_range("CosineCoefficients: index out of range");
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(max_degree_ + 1) + static_cast<std::size_t>(n);
  }

  int max_degree_;
  std::vector<double> table_;
};

/// Sum over the table of kappa(m,n) F(m,n) cos(m pi x) cos(n pi y).
inline double cosine_series(const CosineCoefficients& c, double x, double y) {
  const int M = c.max_degree();
  std::vector<double> cy(static_cast<std::size_t>(M) + 1);
  for (int n = 0; n <= M; ++n) cy[static_cast<std::size_t>(n)] = std::cos(n * std::numbers::pi * y);
  double sum = 0.0;
  for (int m = 0; m <= M; ++m) {
    const double cx = std::cos(m * std::numbers::pi * x);
    for (int n = 0; n <= M; ++n) sum += kappa(m, n) * c(m, n) * cx * cy[static_cast<std::size_t>(n)];
  }
  return sum;
}

/// Uniform (nx+1) x (ny+1) lattice of samples on [0,1]^2, value(i, j) at
/// (i/nx, j/ny).
struct GridSamples {
  int nx = 1;
  int ny = 1;
  std::vector<double> values;

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(ny + 1) + static_cast<std::size_t>(j)];
  }
};

class SpatialField {
public:
  enum class Kind { analytic, grid, coefficients };
  using Function = std::function<double(double, double)>;

  static SpatialField analytic(std::string name, Function fn) {
    if (!fn) throw std::invalid_argument("SpatialField: empty function");
    SpatialField f;
    f.name_ = std::move(name);
    f.data_ = std::move(fn);
    return f;
  }

  /// Bilinear interpolant of `grid`; both axes need at least two intervals.
  static SpatialField grid(GridSamples grid) {
    if (grid.nx < 2 || grid.ny < 2)
      throw std::invalid_argument("SpatialField: grid needs at least 2 intervals per axis");
    const auto expected = static_cast<std::size_t>(grid.nx + 1) * static_cast<std::size_t>(grid.ny + 1);
    if (grid.values.size() != expected)
      throw std::invalid_argument("SpatialField: grid value count does not match dimensions");
    for (std::size_t k = 0; k < grid.values.size(); ++k)
      if (!std::isfinite(grid.values[k]))
        throw std::invalid_argument("SpatialField: non-finite grid value at index " + std::to_string(k));
    SpatialField f;
    f.name_ = "grid";
    f.breaks_x_.resize(static_cast<std::size_t>(grid.nx) + 1);
    f.breaks_y_.resize(static_cast<std::size_t>(grid.ny) + 1);
    for (int i = 0; i <= grid.nx; ++i) f.breaks_x_[static_cast<std::size_t>(i)] = static_cast<double>(i) / grid.nx;
    for (int j = 0; j <= grid.ny; ++j) f.breaks_y_[static_cast<std::size_t>(j)] = static_cast<double>(j) / grid.ny;
    f.data_ = std::move(grid);
    return f;
  }

  static SpatialField coefficients(CosineCoefficients c) {
    SpatialField f;
    f.name_ = "coefficients";
    f.data_ = std::move(c);
    return f;
  }

  Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
  const std::string& name() const noexcept { return name_; }

  const CosineCoefficients* as_coefficients() const noexcept { return std::get_if<CosineCoefficients>(&data_); }
  const GridSamples* as_grid() const noexcept { return std::get_if<GridSamples>(&data_); }

  double operator()(double x, double y) const {
    switch (kind()) {
      case Kind::analytic:
        return std::get<Function>(data_)(x, y);
      case Kind::grid:
        return bilinear(std::get<GridSamples>(data_), x, y);
      case Kind::coefficients:
        return cosine_series(std::get<CosineCoefficients>(data_), x, y);
    }
    return 0.0;
  }

  std::span<const double> breakpoints_x() const noexcept { return breaks_x_; }
  std::span<const double> breakpoints_y() const noexcept { return breaks_y_; }

private:
  SpatialField() = default;

  static double bilinear(const GridSamples& g, double x, double y) {
    const double fx = std::clamp(x, 0.0, 1.0) * g.nx;
    const double fy = std::clamp(y, 0.0, 1.0) * g.ny;
    const int i = std::min(static_cast<int>(fx), g.nx - 1);
    const int j = std::min(static_cast<int>(fy), g.ny - 1);
    const double sx = fx - i;
    const double sy = fy - j;
    return (1 - sx) * (1 - sy) * g.at(i, j) + sx * (1 - sy) * g.at(i + 1, j) + (1 - sx) * sy * g.at(i, j + 1) +
           sx * sy * g.at(i + 1, j + 1);
  }

  std::string name_;
  std::variant<Function, GridSamples, CosineCoefficients> data_;
  std::vector<double> breaks_x_;
  std::vector<double> breaks_y_;
};

/// Tensor quadrature rules for a field, refined at its grid lines.
struct SpatialRules {
  QuadratureRule x;
  QuadratureRule y;
};

inline SpatialRules spatial_rules(const SpatialField& w, const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  return {make_rule(0.0, 1.0, spec, w.breakpoints_x()), make_rule(0.0, 1.0, spec, w.breakpoints_y())};
}

inline double l1_norm(const SpatialField& w, const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  const auto rules = spatial_rules(w, spec);
  return integrate_2d([&](double x, double y) { return std::fabs(w(x, y)); }, rules.x, rules.y);
}

/// Parseval: ||w||^2 = sum kappa(m,n) F(m,n)^2.
inline double l2_norm(const CosineCoefficients& c) {
  double sum = 0.0;
  const int M = c.max_degree();
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= M; ++n) sum += kappa(m, n) * c(m, n) * c(m, n);
  return std::sqrt(sum);
}

inline double l2_norm(const SpatialField& w, const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  if (const auto* c = w.as_coefficients()) return l2_norm(*c);
  const auto rules = spatial_rules(w, spec);
  return std::sqrt(integrate_2d(
      [&](double x, double y) {
        const double v = w(x, y);
        return v * v;
      },
      rules.x, rules.y));
}

inline double h1_norm(const CosineCoefficients& c) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  double sum = 0.0;
  const int M = c.max_degree();
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= M; ++n) sum += (1.0 + pi2 * (m * m + n * n)) * kappa(m, n) * c(m, n) * c(m, n);
  return std::sqrt(sum);
}

/// Per-row bookkeeping from the recovery: the smallest and largest |D| seen at
/// the interpolation nodes, and how many nodes fell into the D = 0 branch.
struct RowDiagnostics {
  int n = 0;
  double min_abs_d = 0.0;
  double max_abs_d = 0.0;
  int degenerate_nodes = 0;
  bool all_degenerate = false;
};

struct ExperimentReport {
  double epsilon = 0.0;
  int r = 1;
  CosineCoefficients coefficients;
  std::optional<double> l2_error_vs_exact;
  std::optional<double> bound_value;
  std::map<std::string, double> norms;
  std::map<std::string, double> timings;
  std::vector<RowDiagnostics> rows;
  bool degenerate = false;
  /// Set when the observed error exceeds the reported bound.
  bool bound_violated = false;
};

}  // namespace heatsrc
