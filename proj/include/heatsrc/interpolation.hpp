#pragma once

// Lagrange recovery of an even entire function of exponential type from its
// values on the symmetric integer nodes +-(4r + j), j = 1..20r.
//
// For even data on symmetric nodes the interpolant is a polynomial in
// s = z^2 through the 20r points (z_j^2, w(z_j)), so the basis is evaluated
// directly in s. The modes z = i m pi correspond to s = -(m pi)^2.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsrc/numerics.hpp"

namespace heatsrc {

/// Largest r whose nodes keep cosh(24 r) representable.
inline constexpr int kMaxInterpolationLevel = 29;

struct NodeSet {
  int r = 1;
  std::vector<double> positive_nodes;

  std::size_t size() const noexcept { return positive_nodes.size(); }
};

inline NodeSet node_set(int r) {
  if (r < 1 || r > kMaxInterpolationLevel)
    throw std::out_of_range("node_set: r must lie in [1, " + std::to_string(kMaxInterpolationLevel) + "], got " +
                            std::to_string(r));
  NodeSet nodes{r, {}};
  nodes.positive_nodes.reserve(static_cast<std::size_t>(20 * r));
  for (int j = 1; j <= 20 * r; ++j) nodes.positive_nodes.push_back(4.0 * r + j);
  return nodes;
}

namespace detail {

/// Sign and log-magnitude of each basis polynomial, carried in long double:
/// the sums that use these weights lose accuracy in proportion to the
/// Lebesgue sum, which reaches 1e15 at r = 3.
struct WideLogSigned {
  long double log_magnitude = 0.0L;
  int sign = 1;
};

inline std::vector<WideLogSigned> wide_basis(const NodeSet& nodes, double target_s) {
  const std::size_t p = nodes.size();
  std::vector<long double> sq(p);
  for (std::size_t j = 0; j < p; ++j)
    sq[j] = static_cast<long double>(nodes.positive_nodes[j]) * static_cast<long double>(nodes.positive_nodes[j]);
  const long double s = target_s;
  std::vector<WideLogSigned> basis(p);
  for (std::size_t j = 0; j < p; ++j) {
    WideLogSigned b;
    for (std::size_t l = 0; l < p; ++l) {
      if (l == j) continue;
      const long double num = s - sq[l];
      const long double den = sq[j] - sq[l];
      if (num == 0.0L) {
        b = {-std::numeric_limits<long double>::infinity(), 0};
        break;
      }
      b.log_magnitude += std::log(std::fabs(num)) - std::log(std::fabs(den));
      if ((num < 0.0L) != (den < 0.0L)) b.sign = -b.sign;
    }
    basis[j] = b;
  }
  return basis;
}

inline long double wide_value(const WideLogSigned& b) {
  return b.sign == 0 ? 0.0L : b.sign * std::exp(b.log_magnitude);
}

}  // namespace detail

/// Weights basis_j(s) = prod_{l != j} (s - z_l^2) / (z_j^2 - z_l^2), so that
/// the interpolant at s is sum_j weight_j * w(z_j) taken in ascending j.
inline std::vector<long double> basis_weights(const NodeSet& nodes, double target_s) {
  const auto wide = detail::wide_basis(nodes, target_s);
  std::vector<long double> w(wide.size());
  for (std::size_t j = 0; j < wide.size(); ++j) w[j] = detail::wide_value(wide[j]);
  return w;
}

/// The basis polynomials at `s`, each in sign/log-magnitude form.
inline std::vector<LogSigned> even_basis(const NodeSet& nodes, double target_s) {
  const auto wide = detail::wide_basis(nodes, target_s);
  std::vector<LogSigned> basis(wide.size());
  for (std::size_t j = 0; j < wide.size(); ++j)
    basis[j] = wide[j].sign == 0 ? LogSigned{} : LogSigned{static_cast<double>(wide[j].log_magnitude), wide[j].sign};
  return basis;
}

/// Ascending-j sum of weight_j * values[j] in long double.
template <class Real>
double weighted_sum(std::span<const long double> weights, std::span<const Real> values) {
  long double sum = 0.0L;
  for (std::size_t j = 0; j < weights.size(); ++j) sum += weights[j] * static_cast<long double>(values[j]);
  return static_cast<double>(sum);
}

inline double interpolate_even(const NodeSet& nodes, std::span<const double> values, double target_s) {
  if (values.size() != nodes.size())
    throw std::invalid_argument("interpolate_even: expected " + std::to_string(nodes.size()) + " values, got " +
                                std::to_string(values.size()));
  for (std::size_t j = 0; j < values.size(); ++j)
    if (!std::isfinite(values[j]))
      throw std::invalid_argument("interpolate_even: non-finite value at node " + std::to_string(j));
  const auto w = basis_weights(nodes, target_s);
  return weighted_sum<double>(w, values);
}

/// sum_j |basis_j(s)|: how much a uniform perturbation of the node values
/// can move the interpolant at s.
inline double lebesgue_sum(const NodeSet& nodes, double target_s) {
  long double sum = 0.0L;
  for (const auto& b : detail::wide_basis(nodes, target_s)) sum += std::fabs(detail::wide_value(b));
  return static_cast<double>(sum);
}

/// A e^{-r} + 20 r e^{25 r} sigma: the recovery error on |z| <= pi r for an
/// entire w with |w(z)| <= A e^{|z|} when node values carry error sigma.
inline double interp_error_bound(double A, int r, double sigma) {
  if (A < 0.0 || sigma < 0.0) throw std::invalid_argument("interp_error_bound: A and sigma must be >= 0");
  if (r < 1) throw std::invalid_argument("interp_error_bound: r must be >= 1");
  const double exact_part = A * std::exp(-static_cast<double>(r));
  if (sigma == 0.0) return exact_part;
  const double log_noise = std::log(20.0 * r) + 25.0 * r + std::log(sigma);
  return exact_part + std::exp(log_noise);
}

struct Inequality9Check {
  int r = 1;
  double lhs_log = 0.0;
  double rhs_log = 0.0;
  bool holds = false;
};

/// log prod_j ((pi r)^2 + z_j^2) / ((45 r)^2 - z_j^2) against
/// log((45 - pi) / 45) - 46 r.
inline Inequality9Check check_inequality_9(int r) {
  if (r < 1) throw std::invalid_argument("check_inequality_9: r must be >= 1");
  const double pr = std::numbers::pi * r;
  const double outer = 45.0 * r;
  double lhs = 0.0;
  for (int j = 1; j <= 20 * r; ++j) {
    const double z = 4.0 * r + j;
    lhs += std::log((pr * pr + z * z) / (outer * outer - z * z));
  }
  const double rhs = std::log((45.0 - std::numbers::pi) / 45.0) - 46.0 * r;
  return {r, lhs, rhs, lhs <= rhs};
}

struct JBoundCheck {
  int r = 1;
  double log_J = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// J(r) = (4r+2)(4r+3)...(24r) / ((10r-1)! (10r)!), compared with e^{25 r}.
inline JBoundCheck check_j_bound(int r) {
  if (r < 1) throw std::invalid_argument("check_j_bound: r must be >= 1");
  double log_num = 0.0;
  for (int k = 4 * r + 2; k <= 24 * r; ++k) log_num += std::log(static_cast<double>(k));
  const double log_den = std::lgamma(10.0 * r) + std::lgamma(10.0 * r + 1.0);
  const double log_j = log_num - log_den;
  const double bound = 25.0 * r;
  return {r, log_j, bound, log_j < bound};
}

}  // namespace heatsrc
