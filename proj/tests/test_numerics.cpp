#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "heatsrc/numerics.hpp"
#include "support.hpp"

using namespace heatsrc;
using heatsrc::testing::pi;

TEST(Quadrature, SpecDefaultsAndValidation) {
  const auto s = QuadratureSpec::spatial();
  EXPECT_EQ(s.points_per_panel, 16);
  EXPECT_EQ(s.panels, 32);
  EXPECT_EQ(s.grading, Grading::uniform);
  const auto t = QuadratureSpec::temporal();
  EXPECT_EQ(t.panels, 40);
  EXPECT_EQ(t.grading, Grading::geometric);
  EXPECT_DOUBLE_EQ(t.grading_ratio, 0.5);

  EXPECT_THROW((QuadratureSpec{1, 4, Grading::uniform, 0.5}.validate()), std::invalid_argument);
  EXPECT_THROW((QuadratureSpec{8, 0, Grading::uniform, 0.5}.validate()), std::invalid_argument);
  EXPECT_THROW((QuadratureSpec{8, 4, Grading::geometric, 1.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((QuadratureSpec{8, 4, Grading::uniform, 2.0}.validate()));
}

TEST(Quadrature, GaussLegendreWeightsSumToTwo) {
  for (int n : {2, 5, 16, 32}) {
    const auto& ref = detail::gauss_legendre(n);
    double s = 0.0;
    for (double w : ref.weights) s += w;
    EXPECT_NEAR(s, 2.0, 1e-14) << n;
    EXPECT_TRUE(std::is_sorted(ref.nodes.begin(), ref.nodes.end()));
  }
}

TEST(Quadrature, Examples1d) {
  EXPECT_NEAR(integrate_1d([](double x) { return x; }, 0.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(integrate_1d([](double t) { return std::exp(-100.0 * t); }, 0.0, 1.0, QuadratureSpec::temporal()),
              (1.0 - std::exp(-100.0)) / 100.0, 1e-15);
  EXPECT_NEAR(integrate_1d([](double x) { return std::cosh(2.0 * x); }, 0.0, 1.0), std::sinh(2.0) / 2.0, 1e-14);
}

TEST(Quadrature, Examples2d) {
  EXPECT_NEAR(integrate_2d([](double, double) { return 1.0; }), 1.0, 1e-14);
  EXPECT_NEAR(integrate_2d([](double x, double y) { return x * y; }), 0.25, 1e-15);
  EXPECT_NEAR(integrate_2d([](double x, double y) {
                const double c = std::cos(pi * x) * std::cos(pi * y);
                return c * c;
              }),
              0.25, 1e-14);
}

TEST(Quadrature, ExactForPolynomialsUpToDegree2nMinus1) {
  const QuadratureSpec one_panel{4, 1, Grading::uniform, 0.5};
  // degree 7 with 4 points: exact
  EXPECT_NEAR(integrate_1d([](double x) { return std::pow(x, 7); }, 0.0, 2.0, one_panel), 256.0 / 8.0, 1e-12);
  // degree 8 is not
  EXPECT_GT(std::fabs(integrate_1d([](double x) { return std::pow(x, 8); }, 0.0, 2.0, one_panel) - 512.0 / 9.0),
            1e-6);
}

TEST(Quadrature, NonFiniteValueNamesAbscissa) {
  try {
    integrate_1d([](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }, 0.0, 1.0);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_GT(e.abscissa(), 0.5);
    EXPECT_NE(std::string(e.what()).find("abscissa"), std::string::npos);
  }
  EXPECT_THROW(integrate_2d([](double x, double) { return 1.0 / (x - x); }), EvaluationError);
  EXPECT_THROW(integrate_1d([](double x) { return x; }, 1.0, 0.0), std::invalid_argument);
}

TEST(Quadrature, PanelEdgesMergeBreakpoints) {
  const QuadratureSpec spec{4, 2, Grading::uniform, 0.5};
  const std::vector<double> br{0.25, 0.5, 2.0, -1.0};
  const auto e = panel_edges(0.0, 1.0, spec, br);
  EXPECT_EQ(e, (std::vector<double>{0.0, 0.25, 0.5, 1.0}));

  const auto g = panel_edges(0.0, 1.0, QuadratureSpec{4, 4, Grading::geometric, 0.5});
  EXPECT_EQ(g, (std::vector<double>{0.0, 0.125, 0.25, 0.5, 1.0}));
}

TEST(Quadrature, BreakpointsResolveKinks) {
  auto f = [](double t) { return std::fabs(t - 0.3); };
  const double exact = 0.5 * (0.09 + 0.49);
  const QuadratureSpec spec{4, 3, Grading::uniform, 0.5};
  const std::vector<double> br{0.3};
  EXPECT_NEAR(integrate_1d(f, 0.0, 1.0, spec, br), exact, 1e-15);
  EXPECT_GT(std::fabs(integrate_1d(f, 0.0, 1.0, spec) - exact), 1e-6);
}

TEST(QuadratureProperty, LinearAndAdditive) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng), c = 0.5 + std::fabs(u(rng));
    auto f = [c](double x) { return std::sin(c * x) + x * x; };
    auto g = [c](double x) { return std::exp(-c * x); };
    const double lhs = integrate_1d([&](double x) { return a * f(x) + b * g(x); }, 0.0, 1.0);
    const double rhs = a * integrate_1d(f, 0.0, 1.0) + b * integrate_1d(g, 0.0, 1.0);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::fabs(rhs)));

    const double split = 0.1 + 0.8 * (u(rng) + 2.0) / 4.0;
    const double whole = integrate_1d(f, 0.0, 1.0);
    const double parts = integrate_1d(f, 0.0, split) + integrate_1d(f, split, 1.0);
    EXPECT_NEAR(whole, parts, 1e-12 * std::max(1.0, std::fabs(whole)));
  }
}

TEST(QuadratureProperty, DoublingPanelsDoesNotIncreaseError) {
  for (double lambda : {1.0, 100.0, 576.0}) {
    const double exact = -std::expm1(-lambda) / lambda;
    auto f = [lambda](double t) { return std::exp(-lambda * t); };
    double previous = std::numeric_limits<double>::infinity();
    double first = 0.0;
    for (int panels : {1, 2, 4, 8, 16, 32, 64, 128, 256}) {
      const QuadratureSpec spec{4, panels, Grading::uniform, 0.5};
      const double err = std::fabs(integrate_1d(f, 0.0, 1.0, spec) - exact) / exact;
      EXPECT_LE(err, previous * (1.0 + 1e-9) + 1e-14) << lambda << " panels " << panels;
      if (panels == 1) first = err;
      previous = err;
    }
    EXPECT_LT(previous, 1e-3 * first + 1e-14) << lambda;
    const double graded = integrate_1d(f, 0.0, 1.0, QuadratureSpec::temporal());
    EXPECT_NEAR(graded / exact, 1.0, 1e-12) << lambda;
  }
}

TEST(LogProduct, Examples) {
  const std::vector<double> a{2.0, 3.0};
  auto p = log_product(a);
  EXPECT_NEAR(p.log_magnitude, std::log(6.0), 1e-15);
  EXPECT_EQ(p.sign, 1);

  const std::vector<double> b{-1.0, 5.0};
  p = log_product(b);
  EXPECT_NEAR(p.log_magnitude, std::log(5.0), 1e-15);
  EXPECT_EQ(p.sign, -1);

  const std::vector<double> e(1080, std::exp(1.0));
  p = log_product(e);
  EXPECT_NEAR(p.log_magnitude, 1080.0, 1e-10);
  EXPECT_EQ(p.sign, 1);
  EXPECT_TRUE(std::isinf(p.value()));
}

TEST(LogProduct, ZeroAndEmpty) {
  const std::vector<double> z{3.0, 0.0, 2.0};
  const auto p = log_product(z);
  EXPECT_EQ(p.sign, 0);
  EXPECT_TRUE(std::isinf(p.log_magnitude) && p.log_magnitude < 0);
  EXPECT_EQ(p.value(), 0.0);
  const auto one = log_product(std::span<const double>{});
  EXPECT_EQ(one.value(), 1.0);
  EXPECT_THROW(LogSigned::from_value(2.0) / LogSigned{}, std::domain_error);
}

TEST(LogProductProperty, PermutationInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> f(40);
    for (auto& v : f) v = u(rng);
    auto g = f;
    std::shuffle(g.begin(), g.end(), rng);
    const auto a = log_product(f);
    const auto b = log_product(g);
    EXPECT_EQ(a.sign, b.sign);
    EXPECT_NEAR(a.log_magnitude, b.log_magnitude, 1e-12 * std::max(1.0, std::fabs(a.log_magnitude)));
  }
}
