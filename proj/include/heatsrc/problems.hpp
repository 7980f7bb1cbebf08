#pragma once

// The two benchmark problems with closed-form exact and disturbed data.
// T = 1 throughout. The disturbance of g is (pi/k) sin^2(k pi x) Y_k(y) with
// Y_k = cos(k pi y) for example 1 and cos(2 pi y) for example 2; its L1 norm
// is 1/k while the matching source perturbation grows like k.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsrc/model.hpp"
#include "heatsrc/numerics.hpp"

namespace heatsrc {

enum class ExampleId { example1 = 1, example2 = 2 };

inline ExampleId example_from_int(int id) {
  if (id == 1) return ExampleId::example1;
  if (id == 2) return ExampleId::example2;
  throw std::invalid_argument("unknown example id " + std::to_string(id) + " (expected 1 or 2)");
}

inline int to_int(ExampleId id) { return static_cast<int>(id); }

struct BenchmarkCase {
  ExampleId id = ExampleId::example1;
  int k = 1;
  TimeProfile phi;        ///< disturbed time factor (equal to the exact one)
  TimeProfile phi_exact;
  SpatialField g;         ///< disturbed initial temperature
  SpatialField g_exact;
  SpatialField f0;        ///< exact source
  SpatialField f_disturbed;
  SpatialField u0_at_T;   ///< exact solution at t = T
  SpatialField u_disturbed_at_T;
};

/// Reference values printed with the published runs at k = 100.
struct PublishedResult {
  std::vector<double> coefficients;  ///< kappa*F for (0,0), (1,0), (0,1), (1,1)
  double l2_error = 0.0;
};

inline PublishedResult published_result(ExampleId id) {
  if (id == ExampleId::example1) return {{0.0, 0.0, -2.999721, -1.997145}, 0.001441};
  return {{0.040435, 0.426992, -0.431701, -0.800509}, 0.059997};
}

namespace detail {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

inline void check_k(int k) {
  if (k < 1) throw std::out_of_range("benchmark: k must be >= 1, got " + std::to_string(k));
}

// Spatial factor of example 2: X(x) = x cos(1-x) + sin(1-x) - 1, Y(y) = 2y^3 - 3y^2.
inline double ex2_x(double x) { return x * std::cos(1.0 - x) + std::sin(1.0 - x) - 1.0; }
inline double ex2_y(double y) { return 2.0 * y * y * y - 3.0 * y * y; }

inline double sin2(int k, double x) {
  const double s = std::sin(k * pi * x);
  return s * s;
}

inline double disturbance_y(ExampleId id, int k, double y) {
  return id == ExampleId::example1 ? std::cos(k * pi * y) : std::cos(2.0 * pi * y);
}

}  // namespace detail

inline TimeProfile example_phi(ExampleId id) {
  using namespace detail;
  if (id == ExampleId::example1)
    return TimeProfile::analytic(
        "example1_phi", 1.0, [](double t) { return pi2 * std::exp(-4.0 * pi2 * t); },
        ConditionH{0.0, pi2 * std::exp(-4.0 * pi2), 1.0});
  return TimeProfile::analytic(
      "example2_phi", 1.0, [](double t) { return std::exp(t); }, ConditionH{0.0, 1.0, 1.0});
}

inline SpatialField example_g0(ExampleId id) {
  using namespace detail;
  if (id == ExampleId::example1)
    // (1 + cos pi x) written as 2 cos^2(pi x / 2) keeps relative accuracy near x = 1.
    return SpatialField::analytic("example1_g", [](double x, double y) {
      const double c = std::cos(0.5 * pi * x);
      return 2.0 * c * c * std::cos(pi * y);
    });
  return SpatialField::analytic("example2_g", [](double x, double y) { return ex2_x(x) * ex2_y(y); });
}

inline SpatialField example_f0(ExampleId id) {
  using namespace detail;
  if (id == ExampleId::example1)
    return SpatialField::analytic("example1_f0", [](double x, double y) {
      return (-3.0 - 2.0 * std::cos(pi * x)) * std::cos(pi * y);
    });
  return SpatialField::analytic("example2_f0", [](double x, double y) {
    return (2.0 * x * std::cos(1.0 - x) - 1.0) * ex2_y(y) - ex2_x(x) * (12.0 * y - 6.0);
  });
}

/// Exact solution at time t.
inline SpatialField example_u0(ExampleId id, double t) {
  using namespace detail;
  const auto g0 = example_g0(id);
  const double factor = id == ExampleId::example1 ? std::exp(-4.0 * pi2 * t) : std::exp(t);
  return SpatialField::analytic(id == ExampleId::example1 ? "example1_u0_T" : "example2_u0_T",
                                [g0, factor](double x, double y) { return factor * g0(x, y); });
}

inline SpatialField example_g_disturbed(ExampleId id, int k) {
  using namespace detail;
  check_k(k);
  const auto g0 = example_g0(id);
  return SpatialField::analytic(g0.name() + "_disturbed", [g0, id, k](double x, double y) {
    return g0(x, y) + (pi / k) * sin2(k, x) * disturbance_y(id, k, y);
  });
}

inline SpatialField example_f_disturbed(ExampleId id, int k) {
  using namespace detail;
  check_k(k);
  const auto f0 = example_f0(id);
  const double kk = static_cast<double>(k) * k;
  const double a = id == ExampleId::example1 ? 5.0 * kk - 4.0 : 4.0 * kk * pi2 + 4.0 * pi2 + 1.0;
  const double b = id == ExampleId::example1 ? 2.0 * kk : 2.0 * kk * pi2;
  return SpatialField::analytic(f0.name() + "_disturbed", [f0, id, k, a, b](double x, double y) {
    return f0(x, y) + (pi / k) * (a * sin2(k, x) - b) * disturbance_y(id, k, y);
  });
}

inline SpatialField example_u_disturbed(ExampleId id, int k, double t) {
  using namespace detail;
  check_k(k);
  const auto u0 = example_u0(id, t);
  const double factor = id == ExampleId::example1 ? std::exp(-4.0 * pi2 * t) : std::exp(t);
  return SpatialField::analytic(u0.name() + "_disturbed", [u0, id, k, factor](double x, double y) {
    return u0(x, y) + (pi / k) * factor * sin2(k, x) * disturbance_y(id, k, y);
  });
}

inline BenchmarkCase make_case(ExampleId id, int k) {
  detail::check_k(k);
  return BenchmarkCase{id,
                       k,
                       example_phi(id),
                       example_phi(id),
                       example_g_disturbed(id, k),
                       example_g0(id),
                       example_f0(id),
                       example_f_disturbed(id, k),
                       example_u0(id, 1.0),
                       example_u_disturbed(id, k, 1.0)};
}

/// ||g_k - g_0||_{L1} in closed form.
inline double data_error_l1(ExampleId, int k) {
  detail::check_k(k);
  return 1.0 / k;
}

/// ||f_k - f_0||_{L2} in closed form.
inline double solution_error_l2(ExampleId id, int k) {
  using namespace detail;
  check_k(k);
  const double kk = static_cast<double>(k) * k;
  if (id == ExampleId::example1) return pi / 4.0 * std::sqrt(27.0 * kk - 56.0 + 48.0 / kk);
  const double pi4 = pi2 * pi2;
  return pi / 4.0 * std::sqrt(16.0 * pi4 * kk + 32.0 * pi4 + 8.0 * pi2 + (48.0 * pi4 + 24.0 * pi2 + 3.0) / kk);
}

/// Enough uniform panels to resolve oscillations of wavenumber 2k pi.
inline QuadratureSpec resolving_spec(int k) {
  detail::check_k(k);
  return {16, 32 + 2 * k, Grading::uniform, 0.5};
}

/// The L1 distance of the disturbed data by tensor quadrature, with panel
/// edges at the sign changes of the y-factor.
inline double measured_data_error_l1(ExampleId id, int k) {
  using namespace detail;
  check_k(k);
  const int wave = id == ExampleId::example1 ? k : 2;
  std::vector<double> zeros;
  for (int i = 0; i < wave; ++i) zeros.push_back((i + 0.5) / wave);
  const auto spec = resolving_spec(k);
  const auto rx = make_rule(0.0, 1.0, spec);
  const auto ry = make_rule(0.0, 1.0, spec, zeros);
  const auto g0 = example_g0(id);
  const auto gk = example_g_disturbed(id, k);
  return integrate_2d([&](double x, double y) { return std::fabs(gk(x, y) - g0(x, y)); }, rx, ry);
}

/// ||f_k - f_0||_{L2} by tensor quadrature.
inline double measured_solution_error_l2(ExampleId id, int k) {
  const auto rule = make_rule(0.0, 1.0, resolving_spec(k));
  const auto f0 = example_f0(id);
  const auto fk = example_f_disturbed(id, k);
  return std::sqrt(integrate_2d(
      [&](double x, double y) {
        const double d = fk(x, y) - f0(x, y);
        return d * d;
      },
      rule, rule));
}

/// Names accepted by builtin_profile / builtin_field.
inline std::vector<std::string> builtin_names() {
  return {"example1_phi", "example1_g", "example1_f0", "example1_g_disturbed", "example1_f_disturbed",
          "example2_phi", "example2_g", "example2_f0", "example2_g_disturbed", "example2_f_disturbed"};
}

namespace detail {

inline ExampleId example_of(const std::string& name) {
  if (name.rfind("example1_", 0) == 0) return ExampleId::example1;
  if (name.rfind("example2_", 0) == 0) return ExampleId::example2;
  throw std::invalid_argument("unknown builtin name '" + name + "'");
}

}  // namespace detail

/// Builtin time profiles; the disturbed variants ignore k since phi_k = phi_0.
inline TimeProfile builtin_profile(const std::string& name) {
  const auto id = detail::example_of(name);
  const std::string stem = name.substr(9);
  if (stem == "phi" || stem == "phi_disturbed") return example_phi(id);
  throw std::invalid_argument("unknown builtin profile '" + name + "'");
}

inline SpatialField builtin_field(const std::string& name, int k = 1) {
  const auto id = detail::example_of(name);
  const std::string stem = name.substr(9);
  if (stem == "g") return example_g0(id);
  if (stem == "f0") return example_f0(id);
  if (stem == "g_disturbed") return example_g_disturbed(id, k);
  if (stem == "f_disturbed") return example_f_disturbed(id, k);
  throw std::invalid_argument("unknown builtin field '" + name + "'");
}

}  // namespace heatsrc
