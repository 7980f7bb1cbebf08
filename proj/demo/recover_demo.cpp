// Recovers the source of the first benchmark from data disturbed at k = 100
// and prints the leading coefficients next to the exact ones.

#include <cstdio>

#include "heatsrc/problems.hpp"
#include "heatsrc/regularizer.hpp"

int main() {
  using namespace heatsrc;
  const auto bench = make_case(ExampleId::example1, 100);
  const auto report = regularize(bench.phi, bench.g, 1.0 / bench.k, bench.f0);

  std::printf("r = %d\n", report.r);
  std::printf(" m  n   kappa*F(m,n)\n");
  for (int m = 0; m <= 1; ++m)
    for (int n = 0; n <= 1; ++n)
      std::printf("%2d %2d  %12.7f\n", m, n, kappa(m, n) * report.coefficients(m, n));
  std::printf("exact source: -3 cos(pi y) - 2 cos(pi x) cos(pi y)\n");
  std::printf("L2 error %.6f, bound %.4f\n", *report.l2_error_vs_exact, *report.bound_value);
}
