#pragma once

// Cosine-series analysis and synthesis on the unit square and the truncation
// operator that keeps the modes 0 <= m, n <= M.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heatsrc/model.hpp"
#include "heatsrc/transforms.hpp"

namespace heatsrc {

inline double synthesize(const CosineCoefficients& c, double x, double y) { return cosine_series(c, x, y); }

/// F(m, n) = int_Omega w cos(m pi x) cos(n pi y) for 0 <= m, n <= M.
inline CosineCoefficients analyze(const SpatialField& w, int M,
                                  const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  if (M < 0) throw std::invalid_argument("analyze: M must be >= 0");
  CosineCoefficients out(M);
  if (const auto* c = w.as_coefficients()) {
    for (int m = 0; m <= M; ++m)
      for (int n = 0; n <= M; ++n) out.set(m, n, c->get_or_zero(m, n));
    return out;
  }
  const FieldProjector projector(w, spec);
  const auto& rx = projector.rules().x;
  std::vector<long double> cos_x(rx.size());
  for (int n = 0; n <= M; ++n) {
    const auto& row = projector.row_projection(n);
    for (int m = 0; m <= M; ++m) {
      for (std::size_t i = 0; i < rx.size(); ++i)
        cos_x[i] = std::cos(static_cast<long double>(m) * std::numbers::pi_v<long double> * rx.nodes[i]);
      long double sum = 0.0L;
      for (std::size_t i = 0; i < rx.size(); ++i) sum += rx.weights[i] * cos_x[i] * row[i];
      out.set(m, n, static_cast<double>(sum));
    }
  }
  return out;
}

/// Keeps the modes with max(m, n) <= M; missing modes are zero.
inline CosineCoefficients truncate(const CosineCoefficients& c, int M) {
  if (M < 0) throw std::invalid_argument("truncate: M must be >= 0");
  CosineCoefficients out(M);
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= M; ++n) out.set(m, n, c.get_or_zero(m, n));
  return out;
}

/// ||truncate(c, M) - c||_{L2} by Parseval over the discarded modes.
inline double truncation_error(const CosineCoefficients& c, int M) {
  double tail = 0.0;
  const int K = c.max_degree();
  for (int m = 0; m <= K; ++m)
    for (int n = 0; n <= K; ++n)
      if (m > M || n > M) tail += kappa(m, n) * c(m, n) * c(m, n);
  return std::sqrt(tail);
}

/// ||w||_{H1} / (pi (M + 1)), an upper bound on the L2 truncation error.
inline double truncation_error_bound(int M, double h1) {
  if (M < 0) throw std::invalid_argument("truncation_error_bound: M must be >= 0");
  if (h1 < 0.0) throw std::invalid_argument("truncation_error_bound: h1 must be >= 0");
  return h1 / (std::numbers::pi * (M + 1));
}

}  // namespace heatsrc
