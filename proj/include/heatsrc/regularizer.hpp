#pragma once

// Regularized recovery of the spatial source factor from noisy (phi, g):
//
//   r        = the integer in [ln(1/eps)/50, ln(1/eps)/50 + 1), at least 1
//   H_j(n)   = -G(g)(z_j, n pi) / D(phi)(z_j, n pi),  z_j = 4r + j, j = 1..20r
//   F(m, n)  = Lagrange interpolant of H(., n) through the nodes, at z = i m pi
//   f_eps    = sum_{m,n <= r} kappa(m,n) F(m,n) cos(m pi x) cos(n pi y)
//
// The final-time term of the variational identity is not estimated; it is
// exponentially small at the node abscissae.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "heatsrc/interpolation.hpp"
#include "heatsrc/model.hpp"
#include "heatsrc/spectral.hpp"
#include "heatsrc/transforms.hpp"

namespace heatsrc {

/// Cosine modes kept when measuring the H1 norm of a reference solution.
inline constexpr int kH1AnalysisDegree = 64;

inline int choose_r(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::out_of_range("choose_r: epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  const double lower = std::log(1.0 / epsilon) / 50.0;
  // ln(exp(-50 k)) can land a few ulps above the integer k.
  const double slack = 1e-12 * std::max(1.0, lower);
  const int r = std::max(1, static_cast<int>(std::ceil(lower - slack)));
  if (r > kMaxInterpolationLevel)
    throw std::out_of_range("choose_r: epsilon " + std::to_string(epsilon) + " requires r = " + std::to_string(r) +
                            " > " + std::to_string(kMaxInterpolationLevel));
  return r;
}

struct RegularizationParams {
  double epsilon = 1e-2;
  int r = 1;
  QuadratureSpec spatial = QuadratureSpec::spatial();
  QuadratureSpec temporal = QuadratureSpec::temporal();
  double d_zero_threshold = kDZeroThreshold;
  /// Worker threads for independent rows; results do not depend on it.
  int threads = 1;

  static RegularizationParams for_epsilon(double epsilon) {
    RegularizationParams p;
    p.epsilon = epsilon;
    p.r = choose_r(epsilon);
    return p;
  }
};

struct Recovery {
  CosineCoefficients coefficients;
  std::vector<RowDiagnostics> rows;
  /// Some row had every node in the D = 0 branch.
  bool degenerate = false;
};

inline Recovery recover(const TimeProfile& phi, const SpatialField& g, const RegularizationParams& params) {
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
    throw std::out_of_range("recover: epsilon must lie in (0, 1)");
  if (params.r != choose_r(params.epsilon))
    throw std::invalid_argument("recover: r does not match choose_r(epsilon)");
  const int r = params.r;
  const NodeSet nodes = node_set(r);
  const std::size_t p = nodes.size();

  const FieldProjector projector(g, params.spatial);
  for (int n = 0; n <= r; ++n) projector.row_projection(n);

  std::vector<std::vector<long double>> bases;
  bases.reserve(static_cast<std::size_t>(r) + 1);
  for (int m = 0; m <= r; ++m) {
    const double s = -(m * std::numbers::pi) * (m * std::numbers::pi);
    bases.push_back(basis_weights(nodes, s));
  }

  Recovery out{CosineCoefficients(r), std::vector<RowDiagnostics>(static_cast<std::size_t>(r) + 1), false};
  std::vector<std::vector<double>> columns(static_cast<std::size_t>(r) + 1);

  auto run_row = [&](int n) {
    std::vector<long double> h(p);
    RowDiagnostics diag;
    diag.n = n;
    diag.min_abs_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p; ++j) {
      const double z = nodes.positive_nodes[j];
      const long double d = d_transform_wide(phi, z, n, params.temporal);
      const long double gv = projector.g_wide(z, n);
      const double abs_d = static_cast<double>(std::fabs(d));
      diag.min_abs_d = std::min(diag.min_abs_d, abs_d);
      diag.max_abs_d = std::max(diag.max_abs_d, abs_d);
      if (!(std::fabs(d) >= params.d_zero_threshold)) ++diag.degenerate_nodes;
      h[j] = h_quotient(gv, d, params.d_zero_threshold);
    }
    diag.all_degenerate = diag.degenerate_nodes == static_cast<int>(p);
    std::vector<double> column(static_cast<std::size_t>(r) + 1);
    for (int m = 0; m <= r; ++m) {
      column[static_cast<std::size_t>(m)] = weighted_sum<long double>(bases[static_cast<std::size_t>(m)], h);
    }
    columns[static_cast<std::size_t>(n)] = std::move(column);
    out.rows[static_cast<std::size_t>(n)] = diag;
  };

  const int workers = std::clamp(params.threads, 1, r + 1);
  if (workers == 1) {
    for (int n = 0; n <= r; ++n) run_row(n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int n = w; n <= r; n += workers) run_row(n);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (int n = 0; n <= r; ++n) {
    for (int m = 0; m <= r; ++m)
      out.coefficients.set(m, n, columns[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)]);
    out.degenerate = out.degenerate || out.rows[static_cast<std::size_t>(n)].all_degenerate;
  }
  return out;
}

inline CosineCoefficients recover_coefficients(const TimeProfile& phi, const SpatialField& g,
                                               const RegularizationParams& params) {
  return recover(phi, g, params).coefficients;
}

/// 50 ||f_0||_{H1} / (pi ln(1/eps)).
inline double error_bound(double epsilon, double h1_of_f0) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::out_of_range("error_bound: epsilon must lie in (0, 1)");
  if (h1_of_f0 < 0.0) throw std::invalid_argument("error_bound: h1 must be >= 0");
  return 50.0 * h1_of_f0 / (std::numbers::pi * std::log(1.0 / epsilon));
}

/// H1 norm of a reference field from its first kH1AnalysisDegree modes.
inline double reference_h1_norm(const SpatialField& f, const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  if (const auto* c = f.as_coefficients()) return h1_norm(*c);
  return h1_norm(analyze(f, kH1AnalysisDegree, spec));
}

/// ||a - b||_{L2} by tensor quadrature, refined at both fields' grid lines.
inline double l2_distance(const SpatialField& a, const SpatialField& b,
                          const QuadratureSpec& spec = QuadratureSpec::spatial()) {
  std::vector<double> bx(a.breakpoints_x().begin(), a.breakpoints_x().end());
  bx.insert(bx.end(), b.breakpoints_x().begin(), b.breakpoints_x().end());
  std::vector<double> by(a.breakpoints_y().begin(), a.breakpoints_y().end());
  by.insert(by.end(), b.breakpoints_y().begin(), b.breakpoints_y().end());
  const auto rx = make_rule(0.0, 1.0, spec, bx);
  const auto ry = make_rule(0.0, 1.0, spec, by);
  return std::sqrt(integrate_2d(
      [&](double x, double y) {
        const double d = a(x, y) - b(x, y);
        return d * d;
      },
      rx, ry));
}

inline ExperimentReport regularize(const TimeProfile& phi, const SpatialField& g, const RegularizationParams& params,
                                   const std::optional<SpatialField>& exact_f = std::nullopt) {
  using clock = std::chrono::steady_clock;
  ExperimentReport report;
  report.epsilon = params.epsilon;
  report.r = params.r;

  const auto t0 = clock::now();
  auto recovery = recover(phi, g, params);
  const auto t1 = clock::now();
  report.timings["recover"] = std::chrono::duration<double>(t1 - t0).count();

  report.coefficients = std::move(recovery.coefficients);
  report.rows = std::move(recovery.rows);
  report.degenerate = recovery.degenerate;
  report.norms["l2_regularized"] = l2_norm(report.coefficients);
  report.norms["h1_regularized"] = h1_norm(report.coefficients);

  if (exact_f) {
    const auto regularized = SpatialField::coefficients(report.coefficients);
    const double err = l2_distance(regularized, *exact_f, params.spatial);
    const double h1 = reference_h1_norm(*exact_f, params.spatial);
    report.l2_error_vs_exact = err;
    report.norms["h1_exact"] = h1;
    report.norms["l2_exact"] = l2_norm(*exact_f, params.spatial);
    report.bound_value = error_bound(params.epsilon, h1);
    report.bound_violated = err > *report.bound_value;
    report.timings["evaluate"] = std::chrono::duration<double>(clock::now() - t1).count();
  }
  return report;
}

inline ExperimentReport regularize(const TimeProfile& phi, const SpatialField& g, double epsilon,
                                   const std::optional<SpatialField>& exact_f = std::nullopt) {
  return regularize(phi, g, RegularizationParams::for_epsilon(epsilon), exact_f);
}

}  // namespace heatsrc
