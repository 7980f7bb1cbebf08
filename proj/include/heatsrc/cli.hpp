#pragma once

// Command implementations behind the `heatsrc` executable. Every command
// writes its files into an output directory and returns a process exit code:
// 0 success, 1 bound-check failure, 2 usage error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heatsrc/interpolation.hpp"
#include "heatsrc/io.hpp"
#include "heatsrc/problems.hpp"
#include "heatsrc/regularizer.hpp"

namespace heatsrc::cli {

enum ExitCode : int { kSuccess = 0, kBoundFailure = 1, kUsageError = 2, kNumericalFailure = 3 };

enum class Command { reproduce, regularize, converge, verify_bounds };

struct RunConfig {
  Command command = Command::reproduce;
  std::optional<int> example_id;
  std::optional<int> k;
  std::optional<double> epsilon;
  std::vector<double> epsilons;
  std::optional<std::filesystem::path> phi_file;
  std::optional<std::filesystem::path> g_file;
  std::optional<int> r_max;
  int grid_resolution = 101;
  int threads = 1;
  std::filesystem::path output_dir = ".";
};

/// Worker count: hardware concurrency capped by HEATSRC_THREADS when set.
inline int threads_from_environment() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("HEATSRC_THREADS")) {
    try {
      const int value = std::stoi(cap);
      if (value >= 1) threads = std::min(threads, value);
    } catch (const std::exception&) {
    }
  }
  return threads;
}

namespace detail {

using json = nlohmann::ordered_json;

inline std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

inline json coefficient_rows(const CosineCoefficients& c, const std::optional<PublishedResult>& published) {
  json rows = json::array();
  for (int m = 0; m <= c.max_degree(); ++m)
    for (int n = 0; n <= c.max_degree(); ++n) {
      json row;
      row["m"] = m;
      row["n"] = n;
      row["kappa"] = kappa(m, n);
      row["value"] = c(m, n);
      row["kappa_times_value"] = kappa(m, n) * c(m, n);
      if (published && m <= 1 && n <= 1)
        row["paper_reference"] = published->coefficients[static_cast<std::size_t>(n * 2 + m)];
      rows.push_back(row);
    }
  return rows;
}

inline void print_row_diagnostics(std::ostream& out, const std::vector<RowDiagnostics>& rows) {
  for (const auto& d : rows)
    out << "  row n=" << d.n << ": min|D|=" << format_g(d.min_abs_d, 6) << " max|D|=" << format_g(d.max_abs_d, 6)
        << " degenerate_nodes=" << d.degenerate_nodes << (d.all_degenerate ? " (all nodes in D=0 branch)" : "")
        << '\n';
}

struct CaseRun {
  BenchmarkCase bench;
  ExperimentReport report;
};

inline CaseRun run_case(int example, int k, double epsilon, int threads) {
  auto bench = make_case(example_from_int(example), k);
  auto params = RegularizationParams::for_epsilon(epsilon);
  params.threads = threads;
  auto report = regularize(bench.phi, bench.g, params, bench.f0);
  return {std::move(bench), std::move(report)};
}

}  // namespace detail

inline int cmd_reproduce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.example_id || (*cfg.example_id != 1 && *cfg.example_id != 2)) {
    err << "reproduce: --example must be 1 or 2\n";
    return kUsageError;
  }
  if (!cfg.k || *cfg.k < 1) {
    err << "reproduce: --k must be an integer >= 1\n";
    return kUsageError;
  }
  if (cfg.grid_resolution < 2) {
    err << "reproduce: --grid-resolution must be >= 2\n";
    return kUsageError;
  }
  const int k = *cfg.k;
  if (k < 2) {
    err << "reproduce: k = 1 gives epsilon = 1, outside (0, 1)\n";
    return kUsageError;
  }
  const double epsilon = 1.0 / k;
  auto run = detail::run_case(*cfg.example_id, k, epsilon, cfg.threads);
  const auto& report = run.report;
  const auto id = run.bench.id;

  std::optional<PublishedResult> published;
  if (k == 100) published = published_result(id);

  {
    auto f = detail::open_output(cfg.output_dir, "coefficients.csv");
    write_coefficients_csv(f, report.coefficients);
  }
  {
    detail::json j;
    j["example"] = to_int(id);
    j["k"] = k;
    j["epsilon"] = epsilon;
    j["r"] = report.r;
    j["observed_l2_error"] = *report.l2_error_vs_exact;
    j["paper_reference_l2_error"] = published ? detail::json(published->l2_error) : detail::json(nullptr);
    j["theorem2_bound"] = *report.bound_value;
    j["bound_holds"] = !report.bound_violated;
    j["h1_norm_exact"] = report.norms.at("h1_exact");
    j["l2_norm_exact"] = report.norms.at("l2_exact");
    j["data_error_l1"] = data_error_l1(id, k);
    j["disturbed_solution_error_l2"] = solution_error_l2(id, k);
    j["coefficients"] = detail::coefficient_rows(report.coefficients, published);
    auto f = detail::open_output(cfg.output_dir, "errors.json");
    f << j.dump(2) << '\n';
  }
  {
    const auto regularized = SpatialField::coefficients(report.coefficients);
    auto f = detail::open_output(cfg.output_dir, "grid.csv");
    write_grid_csv(f, cfg.grid_resolution, {"f_reg", "f_exact", "f_disturbed"},
                   {&regularized, &run.bench.f0, &run.bench.f_disturbed});
  }

  out << "example " << to_int(id) << ", k = " << k << ", epsilon = " << format_g(epsilon, 6) << ", r = " << report.r
      << '\n';
  out << "  observed ||f_eps - f_0||_L2 = " << format_g(*report.l2_error_vs_exact, 7);
  if (published) out << " (published " << format_g(published->l2_error, 7) << ")";
  out << "\n  error bound = " << format_g(*report.bound_value, 7) << '\n';
  out << "  recovery took " << format_g(report.timings.at("recover"), 3) << " s\n";
  return kSuccess;
}

inline int cmd_regularize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.phi_file || !cfg.g_file) {
    err << "regularize: --phi and --g are required\n";
    return kUsageError;
  }
  if (!cfg.epsilon || !(*cfg.epsilon > 0.0 && *cfg.epsilon < 1.0)) {
    err << "regularize: --epsilon must lie in (0, 1)\n";
    return kUsageError;
  }
  if (cfg.grid_resolution < 2) {
    err << "regularize: --grid-resolution must be >= 2\n";
    return kUsageError;
  }
  std::optional<TimeProfile> phi;
  std::optional<SpatialField> g;
  try {
    phi = read_time_profile_csv(*cfg.phi_file);
    g = read_grid_csv(*cfg.g_file);
  } catch (const ParseError& e) {
    err << "regularize: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "regularize: " << e.what() << '\n';
    return kUsageError;
  }
  auto params = RegularizationParams::for_epsilon(*cfg.epsilon);
  params.threads = cfg.threads;
  const auto report = regularize(*phi, *g, params);
  {
    auto f = detail::open_output(cfg.output_dir, "coefficients.csv");
    write_coefficients_csv(f, report.coefficients);
  }
  {
    const auto regularized = SpatialField::coefficients(report.coefficients);
    auto f = detail::open_output(cfg.output_dir, "grid.csv");
    write_grid_csv(f, cfg.grid_resolution, {"f_reg"}, {&regularized});
  }
  out << "epsilon = " << format_g(*cfg.epsilon, 6) << ", r = " << report.r << '\n';
  detail::print_row_diagnostics(out, report.rows);
  if (report.degenerate) {
    err << "regularize: a row degenerated to the D = 0 branch\n";
    return kNumericalFailure;
  }
  return kSuccess;
}

inline int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.example_id || (*cfg.example_id != 1 && *cfg.example_id != 2)) {
    err << "converge: --example must be 1 or 2\n";
    return kUsageError;
  }
  if (cfg.epsilons.empty()) {
    err << "converge: --epsilons needs at least one value\n";
    return kUsageError;
  }
  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
    const double e = cfg.epsilons[i];
    if (!(e > 0.0 && e < 1.0)) {
      err << "converge: epsilon " << e << " is outside (0, 1)\n";
      return kUsageError;
    }
    if (i > 0 && !(e < cfg.epsilons[i - 1])) {
      err << "converge: epsilons must be strictly descending\n";
      return kUsageError;
    }
  }
  auto f = detail::open_output(cfg.output_dir, "convergence.csv");
  f << "epsilon,k,r,observed_l2_error,theorem2_bound,bound_holds\n";
  bool all_hold = true;
  out << "epsilon        k        r  observed        bound\n";
  for (double e : cfg.epsilons) {
    const long long k_ll = std::llround(1.0 / e);
    if (k_ll < 2 || k_ll > 1'000'000'000) {
      err << "converge: epsilon " << e << " gives an unusable disturbance index k = " << k_ll << '\n';
      return kUsageError;
    }
    const int k = static_cast<int>(k_ll);
    const auto run = detail::run_case(*cfg.example_id, k, e, cfg.threads);
    const auto& rep = run.report;
    all_hold = all_hold && !rep.bound_violated;
    f << format_g(e, 17) << ',' << k << ',' << rep.r << ',' << format_g(*rep.l2_error_vs_exact, 17) << ','
      << format_g(*rep.bound_value, 17) << ',' << (rep.bound_violated ? "false" : "true") << '\n';
    out << format_g(e, 6) << "  " << k << "  " << rep.r << "  " << format_g(*rep.l2_error_vs_exact, 6) << "  "
        << format_g(*rep.bound_value, 6) << (rep.bound_violated ? "  VIOLATED" : "") << '\n';
  }
  return all_hold ? kSuccess : kBoundFailure;
}

inline int cmd_verify_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.r_max || *cfg.r_max < 1 || *cfg.r_max > 200) {
    err << "verify-bounds: --r-max must lie in [1, 200]\n";
    return kUsageError;
  }
  auto f = detail::open_output(cfg.output_dir, "bounds.csv");
  f << "r,ineq9_lhs_log,ineq9_rhs_log,ineq9_holds,log_J,j_bound_log,j_holds\n";
  std::vector<int> failing;
  for (int r = 1; r <= *cfg.r_max; ++r) {
    const auto q = check_inequality_9(r);
    const auto jb = check_j_bound(r);
    f << r << ',' << format_g(q.lhs_log, 17) << ',' << format_g(q.rhs_log, 17) << ',' << (q.holds ? "true" : "false")
      << ',' << format_g(jb.log_J, 17) << ',' << format_g(jb.bound, 17) << ',' << (jb.holds ? "true" : "false")
      << '\n';
    if (!q.holds || !jb.holds) failing.push_back(r);
  }
  if (failing.empty()) {
    out << "all checks hold for r = 1.." << *cfg.r_max << '\n';
    return kSuccess;
  }
  out << "checks fail for r =";
  for (int r : failing) out << ' ' << r;
  out << '\n';
  return kBoundFailure;
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::reproduce:
        return cmd_reproduce(cfg, out, err);
      case Command::regularize:
        return cmd_regularize(cfg, out, err);
      case Command::converge:
        return cmd_converge(cfg, out, err);
      case Command::verify_bounds:
        return cmd_verify_bounds(cfg, out, err);
    }
  } catch (const EvaluationError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::out_of_range& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::overflow_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsageError;
}

/// Parses argv and runs the selected subcommand.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recover the spatial factor of a separable heat source on the unit square"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.threads = threads_from_environment();

  int example = 0;
  int k = 0;
  double epsilon = 0.0;
  std::string phi_file;
  std::string g_file;
  std::string out_dir;
  int r_max = 0;

  auto* reproduce = app.add_subcommand("reproduce", "Run the regularization on a benchmark with disturbed data");
  reproduce->add_option("--example", example, "Benchmark id (1 or 2)")->required();
  reproduce->add_option("--k", k, "Disturbance index; epsilon = 1/k")->required();
  reproduce->add_option("--out", out_dir, "Output directory")->required();
  reproduce->add_option("--grid-resolution", cfg.grid_resolution, "Lattice points per axis in grid.csv");

  auto* regularize_cmd = app.add_subcommand("regularize", "Regularize sampled data read from CSV files");
  regularize_cmd->add_option("--phi", phi_file, "Time profile CSV (t,value)")->required();
  regularize_cmd->add_option("--g", g_file, "Initial temperature CSV (x,y,value)")->required();
  regularize_cmd->add_option("--epsilon", epsilon, "Data error level in (0,1)")->required();
  regularize_cmd->add_option("--out", out_dir, "Output directory")->required();
  regularize_cmd->add_option("--grid-resolution", cfg.grid_resolution, "Lattice points per axis in grid.csv");

  auto* converge = app.add_subcommand("converge", "Error against epsilon on a benchmark");
  converge->add_option("--example", example, "Benchmark id (1 or 2)")->required();
  converge->add_option("--epsilons", cfg.epsilons, "Comma-separated descending list")->required()->delimiter(',');
  converge->add_option("--out", out_dir, "Output directory")->required();

  auto* verify = app.add_subcommand("verify-bounds", "Check the interpolation constants for r = 1..r_max");
  verify->add_option("--r-max", r_max, "Largest level to check (1..200)")->required();
  verify->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsageError;
  }

  cfg.output_dir = out_dir;
  if (*reproduce) {
    cfg.command = Command::reproduce;
    cfg.example_id = example;
    cfg.k = k;
  } else if (*regularize_cmd) {
    cfg.command = Command::regularize;
    cfg.phi_file = phi_file;
    cfg.g_file = g_file;
    cfg.epsilon = epsilon;
  } else if (*converge) {
    cfg.command = Command::converge;
    cfg.example_id = example;
  } else {
    cfg.command = Command::verify_bounds;
    cfg.r_max = r_max;
  }
  return run(cfg, out, err);
}

}  // namespace heatsrc::cli
