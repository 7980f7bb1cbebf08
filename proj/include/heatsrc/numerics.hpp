#pragma once

// Composite Gauss-Legendre quadrature on intervals and on the unit square,
// plus sign/log-magnitude products for factors whose product overflows.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatsrc {

/// Raised when an integrand or a field produces a non-finite value.
class EvaluationError : public std::runtime_error {
public:
  EvaluationError(const std::string& what, double abscissa)
      : std::runtime_error(what), abscissa_(abscissa) {}

  double abscissa() const noexcept { return abscissa_; }

private:
  double abscissa_;
};

enum class Grading { uniform, geometric };

/// Panel layout for composite Gauss-Legendre rules. Geometric grading
/// clusters panels toward the left endpoint: the edges are
/// a + (b - a) * ratio^i for i = 0..panels-1, followed by a itself.
struct QuadratureSpec {
  int points_per_panel = 16;
  int panels = 32;
  Grading grading = Grading::uniform;
  double grading_ratio = 0.5;

  void validate() const {
    if (points_per_panel < 2)
      throw std::invalid_argument("QuadratureSpec: points_per_panel must be >= 2");
    if (panels < 1)
      throw std::invalid_argument("QuadratureSpec: panels must be >= 1");
    if (grading == Grading::geometric && !(grading_ratio > 0.0 && grading_ratio < 1.0))
      throw std::invalid_argument("QuadratureSpec: grading_ratio must lie in (0,1)");
  }

  /// 32 uniform panels per axis; used for integrals over the unit square.
  static QuadratureSpec spatial() { return {16, 32, Grading::uniform, 0.5}; }

  /// 40 panels graded by 1/2 toward t = 0; used for Laplace-type time integrals.
  static QuadratureSpec temporal() { return {16, 40, Grading::geometric, 0.5}; }

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

namespace detail {

struct ReferenceRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_n carried out in long double, then rounded.
inline ReferenceRule compute_gauss_legendre(int n) {
  ReferenceRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = static_cast<double>(-x);
    rule.nodes[hi] = static_cast<double>(x);
    rule.weights[lo] = static_cast<double>(w);
    rule.weights[hi] = static_cast<double>(w);
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

inline const ReferenceRule& gauss_legendre(int n) {
  // Rules are immutable once built; one table per thread avoids locking.
  thread_local std::vector<ReferenceRule> cache;
  if (cache.size() <= static_cast<std::size_t>(n)) cache.resize(static_cast<std::size_t>(n) + 1);
  auto& slot = cache[static_cast<std::size_t>(n)];
  if (slot.nodes.empty()) slot = compute_gauss_legendre(n);
  return slot;
}

}  // namespace detail

/// Nodes and weights of a composite rule mapped onto [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Panel edges for `spec` on [a, b], merged with any extra breakpoints that
/// fall strictly inside (a, b). Extra breakpoints let piecewise-smooth
/// integrands be integrated panel-by-panel without crossing a kink.
inline std::vector<double> panel_edges(double a, double b, const QuadratureSpec& spec,
                                       std::span<const double> breakpoints = {}) {
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(spec.panels) + 1 + breakpoints.size());
  const double length = b - a;
  if (spec.grading == Grading::uniform) {
    for (int i = 0; i <= spec.panels; ++i)
      edges.push_back(i == spec.panels ? b : a + length * i / spec.panels);
  } else {
    edges.push_back(a);
    edges.push_back(b);
    double scale = 1.0;
    for (int i = 1; i < spec.panels; ++i) {
      scale *= spec.grading_ratio;
      edges.push_back(a + length * scale);
    }
  }
  for (double p : breakpoints)
    if (p > a && p < b) edges.push_back(p);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges.front() = a;
  edges.back() = b;
  return edges;
}

inline QuadratureRule make_rule(double a, double b, const QuadratureSpec& spec,
                                std::span<const double> breakpoints = {}) {
  spec.validate();
  if (!(a < b)) throw std::invalid_argument("make_rule: require a < b");
  const auto& ref = detail::gauss_legendre(spec.points_per_panel);
  const auto edges = panel_edges(a, b, spec, breakpoints);
  QuadratureRule rule;
  rule.nodes.reserve((edges.size() - 1) * ref.nodes.size());
  rule.weights.reserve(rule.nodes.capacity());
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
      rule.nodes.push_back(mid + half * ref.nodes[i]);
      rule.weights.push_back(half * ref.weights[i]);
    }
  }
  return rule;
}

namespace detail {

[[noreturn]] inline void throw_non_finite(double value, double x) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand value " << value << " at abscissa " << x;
  throw EvaluationError(os.str(), x);
}

[[noreturn]] inline void throw_non_finite_2d(double value, double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand value " << value << " at (x, y) = (" << x << ", " << y << ")";
  throw EvaluationError(os.str(), x);
}

}  // namespace detail

/// Applies a precomputed rule; summation runs in ascending node order and in
/// long double. `f` may return double or long double.
template <class F>
long double integrate_wide(F&& f, const QuadratureRule& rule) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const long double v = f(x);
    if (!std::isfinite(v)) detail::throw_non_finite(static_cast<double>(v), x);
    sum += static_cast<long double>(rule.weights[i]) * v;
  }
  return sum;
}

template <class F>
double integrate(F&& f, const QuadratureRule& rule) {
  return static_cast<double>(integrate_wide(std::forward<F>(f), rule));
}

template <class F>
double integrate_1d(F&& f, double a, double b, const QuadratureSpec& spec = {},
                    std::span<const double> breakpoints = {}) {
  return integrate(std::forward<F>(f), make_rule(a, b, spec, breakpoints));
}

/// Nested tensor rule over [0,1]^2: the inner integral runs over y, the outer
/// over x.
template <class F>
double integrate_2d(F&& f, const QuadratureRule& rule_x, const QuadratureRule& rule_y) {
  long double outer = 0.0L;
  for (std::size_t i = 0; i < rule_x.size(); ++i) {
    const double x = rule_x.nodes[i];
    long double inner = 0.0L;
    for (std::size_t j = 0; j < rule_y.size(); ++j) {
      const double y = rule_y.nodes[j];
      const double v = f(x, y);
      if (!std::isfinite(v)) detail::throw_non_finite_2d(v, x, y);
      inner += static_cast<long double>(rule_y.weights[j]) * v;
    }
    outer += static_cast<long double>(rule_x.weights[i]) * inner;
  }
  return static_cast<double>(outer);
}

template <class F>
double integrate_2d(F&& f, const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  const auto rule = make_rule(0.0, 1.0, spec);
  return integrate_2d(std::forward<F>(f), rule, rule);
}

/// A real number stored as sign and natural log of its magnitude.
struct LogSigned {
  double log_magnitude = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogSigned from_value(double v) {
    if (v == 0.0) return {};
    return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
  }

  /// exp(log_magnitude) * sign; overflows to +-inf when out of range.
  double value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_magnitude);
  }

  LogSigned& operator*=(const LogSigned& o) {
    if (sign == 0 || o.sign == 0) {
      *this = {};
    } else {
      log_magnitude += o.log_magnitude;
      sign *= o.sign;
    }
    return *this;
  }

  friend LogSigned operator*(LogSigned a, const LogSigned& b) { return a *= b; }

  LogSigned& operator/=(const LogSigned& o) {
    if (o.sign == 0) throw std::domain_error("LogSigned: division by zero");
    if (sign != 0) {
      log_magnitude -= o.log_magnitude;
      sign *= o.sign;
    }
    return *this;
  }

  friend LogSigned operator/(LogSigned a, const LogSigned& b) { return a /= b; }
};

inline LogSigned log_product(std::span<const double> factors) {
  LogSigned acc{0.0, 1};
  for (double f : factors) acc *= LogSigned::from_value(f);
  return acc;
}

}  // namespace heatsrc
