#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heatsrc/problems.hpp"
#include "heatsrc/spectral.hpp"
#include "support.hpp"

using namespace heatsrc;
using heatsrc::testing::pi;

TEST(Synthesize, Examples) {
  const CosineCoefficients zero(3);
  for (double x : {0.0, 0.3, 1.0}) EXPECT_EQ(synthesize(zero, x, 0.7), 0.0);

  CosineCoefficients c(1);
  c.set(1, 1, 0.25);
  EXPECT_DOUBLE_EQ(synthesize(c, 0.0, 0.0), 1.0);
  EXPECT_NEAR(synthesize(c, 0.2, 0.9), std::cos(0.2 * pi) * std::cos(0.9 * pi), 1e-15);

  // printed kappa*F products placed back as F
  const auto pub = published_result(ExampleId::example1);
  CosineCoefficients e(1);
  e.set(0, 1, pub.coefficients[2] / 2.0);
  e.set(1, 1, pub.coefficients[3] / 4.0);
  EXPECT_NEAR(synthesize(e, 0.0, 0.0), -4.996866, 1e-12);
}

TEST(Synthesize, SmoothBeyondTheSquare) {
  CosineCoefficients c(2);
  c.set(2, 1, 0.3);
  // even and 2-periodic in each variable
  EXPECT_NEAR(synthesize(c, -0.3, 0.4), synthesize(c, 0.3, 0.4), 1e-15);
  EXPECT_NEAR(synthesize(c, 2.3, 0.4), synthesize(c, 0.3, 0.4), 1e-14);
}

TEST(Analyze, Examples) {
  const auto one = SpatialField::analytic("one", [](double, double) { return 1.0; });
  const auto a = analyze(one, 1);
  EXPECT_NEAR(a(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(a(1, 0), 0.0, 1e-14);
  EXPECT_NEAR(a(0, 1), 0.0, 1e-14);
  EXPECT_NEAR(a(1, 1), 0.0, 1e-14);

  const auto f = analyze(example_f0(ExampleId::example1), 1);
  EXPECT_NEAR(f(0, 1), -1.5, 1e-13);
  EXPECT_NEAR(f(1, 1), -0.5, 1e-13);
  EXPECT_NEAR(f(0, 0), 0.0, 1e-13);
  EXPECT_NEAR(f(1, 0), 0.0, 1e-13);
}

TEST(Analyze, CoefficientFieldsArePaddedOrCut) {
  CosineCoefficients c(1);
  c.set(1, 1, 2.0);
  const auto up = analyze(SpatialField::coefficients(c), 3);
  EXPECT_EQ(up(1, 1), 2.0);
  EXPECT_EQ(up(3, 3), 0.0);
  const auto down = analyze(SpatialField::coefficients(up), 0);
  EXPECT_EQ(down.max_degree(), 0);
}

TEST(Truncation, BoundExamples) {
  const double h1 = std::sqrt((1.0 + 4.0 * pi * pi) / 2.0);
  EXPECT_NEAR(h1, 4.498801, 1e-6);
  EXPECT_NEAR(truncation_error_bound(1, h1), h1 / (2.0 * pi), 1e-15);
  EXPECT_NEAR(truncation_error_bound(1, h1), 0.71600, 1e-5);

  CosineCoefficients c(2);
  c.set(2, 0, 0.5);  // cos(2 pi x)
  EXPECT_NEAR(h1_norm(c), h1, 1e-14);
  EXPECT_NEAR(truncation_error(c, 1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_LE(truncation_error(c, 1), truncation_error_bound(1, h1));

  EXPECT_EQ(truncation_error_bound(3, 0.0), 0.0);
  EXPECT_NEAR(truncation_error_bound(49, pi), 0.02, 1e-16);
  EXPECT_THROW(truncation_error_bound(-1, 1.0), std::invalid_argument);
}

TEST(SpectralProperty, RoundTrip) {
  std::mt19937_64 rng(41);
  for (int M = 0; M <= 5; ++M)
    for (int trial = 0; trial < 3; ++trial) {
      const auto c = heatsrc::testing::random_table(rng, M);
      const auto back = analyze(heatsrc::testing::as_analytic(c), M);
      for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) EXPECT_NEAR(back(m, n), c(m, n), 1e-8);
    }
}

TEST(SpectralProperty, ProjectionIsIdempotent) {
  const std::vector<SpatialField> fields{
      SpatialField::analytic("e", [](double x, double y) { return std::exp(x - y * y); }),
      SpatialField::analytic("s", [](double x, double y) { return std::sin(3.0 * x + y) + x * y * y; }),
      example_f0(ExampleId::example2)};
  for (const auto& w : fields)
    for (int M : {1, 3, 5}) {
      const auto once = analyze(w, M);
      const auto twice = analyze(heatsrc::testing::as_analytic(once), M);
      for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) EXPECT_NEAR(twice(m, n), once(m, n), 1e-10);
    }
}

TEST(SpectralProperty, Lemma6BoundOnRandomTrigPolynomials) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = heatsrc::testing::random_table(rng, 8);
    const double h1 = h1_norm(w);
    for (int M = 0; M <= 7; ++M) EXPECT_LE(truncation_error(w, M), truncation_error_bound(M, h1) + 1e-9);
  }
}

TEST(SpectralProperty, TailMatchesQuadrature) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = heatsrc::testing::random_table(rng, 8);
    for (int M : {0, 3, 7}) {
      const auto head = truncate(w, M);
      const auto diff = SpatialField::analytic(
          "d", [w, head](double x, double y) { return cosine_series(w, x, y) - cosine_series(head, x, y); });
      EXPECT_NEAR(l2_norm(diff) / truncation_error(w, M), 1.0, 1e-6);
    }
  }
}
