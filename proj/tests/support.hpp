#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "heatsrc/model.hpp"

namespace heatsrc::testing {

inline constexpr double pi = std::numbers::pi;

/// Random cosine table of degree M with entries in [-1, 1].
inline CosineCoefficients random_table(std::mt19937_64& rng, int M) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CosineCoefficients c(M);
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= M; ++n) c.set(m, n, u(rng));
  return c;
}

/// The same trig polynomial as a closed form, so quadrature sees no table.
inline SpatialField as_analytic(const CosineCoefficients& c) {
  return SpatialField::analytic("trig", [c](double x, double y) { return cosine_series(c, x, y); });
}

class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("heatsrc_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace heatsrc::testing
