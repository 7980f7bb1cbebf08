#pragma once

// The integral transforms
//   G(w)(a, b)      = int_Omega w(x,y) cosh(a x) cos(b y) dx dy
//   D(phi)(a, b)    = int_0^T exp(-(a^2 - b^2) t) phi(t) dt
//   H(phi, w)(a, b) = -G(w)(a, b) / D(phi)(a, b), or 0 where D vanishes
// evaluated at b = n pi, and the residual of the variational identity
//   exp(-(a^2 - n^2 pi^2) T) G(u(T)) - G(g) = D(phi) G(f)
// that every solution of the forward problem satisfies.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsrc/model.hpp"
#include "heatsrc/numerics.hpp"

namespace heatsrc {

/// |D| below this is treated as an exact zero of D.
inline constexpr double kDZeroThreshold = 1e-250;

/// cosh overflows a double beyond this argument.
inline constexpr double kMaxCoshArgument = 700.0;

/// A field sampled once on a tensor Gauss rule. Projections onto cos(n pi y)
/// are cached per n, so G at many abscissae for one n costs one pass over x.
class FieldProjector {
public:
  FieldProjector(const SpatialField& w, const QuadratureSpec& spec = QuadratureSpec::spatial())
      : rules_(spatial_rules(w, spec)) {
    const std::size_t nx = rules_.x.size();
    const std::size_t ny = rules_.y.size();
    samples_.resize(nx * ny);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        const double v = w(rules_.x.nodes[i], rules_.y.nodes[j]);
        if (!std::isfinite(v)) detail::throw_non_finite_2d(v, rules_.x.nodes[i], rules_.y.nodes[j]);
        samples_[i * ny + j] = v;
      }
  }

  /// P_n(x_i) = int_0^1 w(x_i, y) cos(n pi y) dy for every x node.
  const std::vector<long double>& row_projection(int n) const {
    if (n < 0) throw std::invalid_argument("row_projection: n must be >= 0");
    auto it = rows_.find(n);
    if (it != rows_.end()) return it->second;
    const std::size_t nx = rules_.x.size();
    const std::size_t ny = rules_.y.size();
    std::vector<long double> cos_y(ny);
    for (std::size_t j = 0; j < ny; ++j)
      cos_y[j] = rules_.y.weights[j] * std::cos(static_cast<long double>(n) * std::numbers::pi_v<long double> *
                                                rules_.y.nodes[j]);
    std::vector<long double> row(nx);
    for (std::size_t i = 0; i < nx; ++i) {
      long double inner = 0.0L;
      for (std::size_t j = 0; j < ny; ++j) inner += cos_y[j] * samples_[i * ny + j];
      row[i] = inner;
    }
    return rows_.emplace(n, std::move(row)).first->second;
  }

  /// G(w)(alpha, n pi); even in alpha.
  double g(double alpha, int n) const { return static_cast<double>(g_wide(alpha, n)); }

  long double g_wide(double alpha, int n) const {
    const double a = std::fabs(alpha);
    if (a > kMaxCoshArgument) throw std::overflow_error("g_transform: |alpha| > 700 overflows cosh");
    const auto& row = row_projection(n);
    const long double al = a;
    long double sum = 0.0L;
    for (std::size_t i = 0; i < row.size(); ++i) sum += rules_.x.weights[i] * std::cosh(al * rules_.x.nodes[i]) * row[i];
    return sum;
  }

  /// G(w)(i m pi, n pi), the (m, n) cosine coefficient.
  double mode(int m, int n) const {
    if (m < 0) throw std::invalid_argument("mode: m must be >= 0");
    const auto& row = row_projection(n);
    long double sum = 0.0L;
    for (std::size_t i = 0; i < row.size(); ++i)
      sum += rules_.x.weights[i] * std::cos(static_cast<long double>(m) * std::numbers::pi_v<long double> *
                                            rules_.x.nodes[i]) *
             row[i];
    return static_cast<double>(sum);
  }

  const SpatialRules& rules() const noexcept { return rules_; }

private:
  SpatialRules rules_;
  std::vector<double> samples_;
  mutable std::map<int, std::vector<long double>> rows_;
};

inline double g_transform(const SpatialField& w, double alpha, int n,
                          const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  if (n < 0) throw std::invalid_argument("g_transform: n must be >= 0");
  if (std::fabs(alpha) > kMaxCoshArgument) throw std::overflow_error("g_transform: |alpha| > 700 overflows cosh");
  return FieldProjector(w, spec).g(alpha, n);
}

inline double g_transform_mode(const SpatialField& w, int m, int n,
                               const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  if (m < 0 || n < 0) throw std::invalid_argument("g_transform_mode: indices must be >= 0");
  if (const auto* c = w.as_coefficients()) return c->get_or_zero(m, n);
  return FieldProjector(w, spec).mode(m, n);
}

/// int_0^T exp(-rate t) phi(t) dt, in long double.
inline long double laplace_weight_wide(const TimeProfile& phi, long double rate,
                                       const QuadratureSpec& spec = QuadratureSpec::temporal()) {
  return integrate_wide([&](double t) { return std::exp(-rate * t) * phi(t); },
                        make_rule(0.0, phi.horizon(), spec, phi.breakpoints()));
}

inline double laplace_weight(const TimeProfile& phi, double rate,
                             const QuadratureSpec& spec = QuadratureSpec::temporal()) {
  return static_cast<double>(laplace_weight_wide(phi, rate, spec));
}

inline long double d_transform_wide(const TimeProfile& phi, double alpha, int n,
                                    const QuadratureSpec& spec = QuadratureSpec::temporal()) {
  if (n < 0) throw std::invalid_argument("d_transform: n must be >= 0");
  const long double beta = n * std::numbers::pi_v<long double>;
  const long double a = alpha;
  return laplace_weight_wide(phi, a * a - beta * beta, spec);
}

inline double d_transform(const TimeProfile& phi, double alpha, int n,
                          const QuadratureSpec& spec = QuadratureSpec::temporal()) {
  return static_cast<double>(d_transform_wide(phi, alpha, n, spec));
}

/// D(phi)(i m pi, n pi): the rate is -(m^2 + n^2) pi^2.
inline double d_transform_mode(const TimeProfile& phi, int m, int n,
                               const QuadratureSpec& spec = QuadratureSpec::temporal()) {
  if (m < 0 || n < 0) throw std::invalid_argument("d_transform_mode: indices must be >= 0");
  constexpr long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
  return laplace_weight(phi, static_cast<double>(-pi2 * (m * m + n * n)), spec);
}

/// Quotient -G/D with the D = 0 branch returning 0.
template <std::floating_point Real>
Real h_quotient(Real g_value, Real d_value, double zero_threshold = kDZeroThreshold) {
  if (!(std::fabs(d_value) >= zero_threshold)) return Real(0);
  return -g_value / d_value;
}

inline double h_transform(const TimeProfile& phi, const SpatialField& w, double alpha, int n,
                          double zero_threshold = kDZeroThreshold) {
  return h_quotient(g_transform(w, alpha, n), d_transform(phi, alpha, n), zero_threshold);
}

/// Residual of the variational identity for one tuple (u(T), g, phi, f).
/// Each field is sampled once, so many abscissae can be checked cheaply.
class ResidualChecker {
public:
  ResidualChecker(const SpatialField& uT, const SpatialField& g, const TimeProfile& phi, const SpatialField& f,
                const QuadratureSpec& spatial = QuadratureSpec::spatial(),
                const QuadratureSpec& temporal = QuadratureSpec::temporal())
      : uT_(uT, spatial), g_(g, spatial), f_(f, spatial), phi_(phi), temporal_(temporal) {}

  /// exp(-(alpha^2 - n^2 pi^2) T) G(uT) - G(g) - D(phi) G(f) at a real abscissa.
  double residual(double alpha, int n) const {
    if (n < 0) throw std::invalid_argument("lemma1_residual: n must be >= 0");
    const double beta = n * std::numbers::pi;
    const double rate = alpha * alpha - beta * beta;
    const double decay = std::exp(-rate * phi_.horizon());
    const double g_u = decay == 0.0 ? 0.0 : uT_.g(alpha, n);
    return decay * g_u - g_.g(alpha, n) - d_transform(phi_, alpha, n, temporal_) * f_.g(alpha, n);
  }

private:
  FieldProjector uT_;
  FieldProjector g_;
  FieldProjector f_;
  TimeProfile phi_;
  QuadratureSpec temporal_;
};

inline double lemma1_residual(const SpatialField& uT, const SpatialField& g, const TimeProfile& phi,
                              const SpatialField& f, double alpha, int n,
                              const QuadratureSpec& spatial = QuadratureSpec::spatial(),
                              const QuadratureSpec& temporal = QuadratureSpec::temporal()) {
  return ResidualChecker(uT, g, phi, f, spatial, temporal).residual(alpha, n);
}

/// The same identity at the imaginary abscissa alpha = i m pi, where G reduces
/// to cosine coefficients.
inline double lemma1_residual_mode(const SpatialField& uT, const SpatialField& g, const TimeProfile& phi,
                                   const SpatialField& f, int m, int n,
                                   const QuadratureSpec& spatial = QuadratureSpec::spatial(),
                                   const QuadratureSpec& temporal = QuadratureSpec::temporal()) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  const double growth = std::exp(pi2 * (m * m + n * n) * phi.horizon());
  return growth * g_transform_mode(uT, m, n, spatial) - g_transform_mode(g, m, n, spatial) -
         d_transform_mode(phi, m, n, temporal) * g_transform_mode(f, m, n, spatial);
}

}  // namespace heatsrc
