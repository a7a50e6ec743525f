#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "tristeer/figures.hpp"
#include "tristeer/io/config.hpp"
#include "tristeer/io/svg.hpp"
#include "tristeer/io/table.hpp"
#include "tristeer/selftest.hpp"

namespace {

using namespace tristeer;

struct OutputOptions {
  std::string out_dir;
  std::string format;
  bool plot = false;
  int workers = 0;
};

io::RunConfig load_config(const std::string& path, const OutputOptions& overrides) {
  io::ParseResult parsed = io::parse_config_file(path);
  if (!parsed.ok()) {
    std::cerr << parsed.issues_text();
    throw io_error("config rejected: " + path);
  }
  io::RunConfig config = std::move(*parsed.config);
  if (!overrides.out_dir.empty()) config.out_dir = overrides.out_dir;
  if (overrides.workers > 0) config.workers = overrides.workers;
  if (overrides.plot) config.plot = true;
  if (!overrides.format.empty()) {
    if (overrides.format == "csv") config.format = io::OutputFormat::csv;
    else if (overrides.format == "json") config.format = io::OutputFormat::json;
    else config.format = io::OutputFormat::both;
  }
  return config;
}

void emit(const SweepResult& result, const std::string& out_dir, const std::string& stem,
          io::OutputFormat format, bool plot) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const auto path = [&](const char* ext) { return (fs::path(out_dir) / (stem + ext)).string(); };
  if (format == io::OutputFormat::csv || format == io::OutputFormat::both) {
    io::write_file(path(".csv"), io::to_csv(result));
    std::cout << "wrote " << path(".csv") << "\n";
  }
  if (format == io::OutputFormat::json || format == io::OutputFormat::both) {
    io::write_file(path(".json"), io::to_json(result));
    std::cout << "wrote " << path(".json") << "\n";
  }
  if (plot) {
    io::write_file(path(".svg"), io::render_svg(result, stem));
    std::cout << "wrote " << path(".svg") << "\n";
  }
}

void print_stability(const SystemParams<double>& p) {
  const auto report = check_stability(p);
  std::cout << "max Re(eigenvalue) = " << report.max_real_part << "\n"
            << "stable             = " << (report.stable ? "yes" : "no")
            << (report.marginal ? " (marginal)" : "") << "\n";
  if (report.routh_hurwitz_applicable) {
    std::cout << "routh-hurwitz      = "
              << (*report.routh_hurwitz_stable ? "stable" : "unstable");
    if (report.routh_hurwitz_disagrees())
      std::cout << "  ** disagrees with the eigenvalue verdict **";
    std::cout << "\n";
  } else {
    std::cout << "routh-hurwitz      = n/a (phi not on pi/2 + n*pi)\n";
  }
}

void print_solution(const SystemParams<double>& p) {
  const Mat6d m = build_drift_matrix(p);
  const Mat6d d = build_diffusion_matrix(p);
  const Mat6d v = solve_steady_state(m, d);
  const Eigen::IOFormat fmt(Eigen::FullPrecision, 0, "  ", "\n", "  ");
  std::cout << "steady-state covariance matrix (X_a,Y_a,X_b,Y_b,X_c,Y_c):\n"
            << v.format(fmt) << "\n";
  const auto physicality = verify_physicality(v);
  std::cout << "symplectic eigenvalues: " << physicality.symplectic_spectrum.transpose()
            << "  (" << (physicality.physical ? "physical" : "UNPHYSICAL") << ")\n"
            << "residual |MV+VM^T+D|_max = " << lyapunov_residual(m, d, v) << "\n";
}

void print_measures(const SystemParams<double>& p, const std::vector<ModePair>& pairs) {
  const Mat6d v = solve_steady_state(build_drift_matrix(p), build_diffusion_matrix(p));
  for (const ModePair pair : pairs) {
    const auto rep = analyze_pair(v, pair);
    std::cout << "pair " << to_string(pair) << ":\n"
              << "  E_N      = " << rep.e_n << "\n"
              << "  G_fwd    = " << rep.g_fwd << "\n"
              << "  G_bwd    = " << rep.g_bwd << "\n"
              << "  regime   = " << to_string(rep.regime) << "\n"
              << "  n_first  = " << rep.moments.n_first << "\n"
              << "  n_second = " << rep.moments.n_second << "\n"
              << "  |corr|   = " << std::abs(rep.moments.corr) << "\n"
              << "  witness  = entangled:" << (rep.hz.entangled ? "yes" : "no")
              << " fwd:" << (rep.hz.steer_forward ? "yes" : "no")
              << " bwd:" << (rep.hz.steer_backward ? "yes" : "no") << "\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady-state entanglement and steering of a three-mode loop"};
  app.require_subcommand(1);

  std::string config_path;
  OutputOptions options;

  const auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", config_path, "config file (key = value)");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    cmd->add_option("--workers", options.workers, "worker threads (0 = hardware)");
    cmd->add_option("--out", options.out_dir, "output directory");
    cmd->add_option("--format", options.format, "csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_flag("--plot", options.plot, "also write an SVG line plot");
  };

  auto* cmd_stability = app.add_subcommand("stability", "stability verdict of one parameter set");
  add_common(cmd_stability, true);
  auto* cmd_solve = app.add_subcommand("solve", "steady-state covariance of one parameter set");
  add_common(cmd_solve, true);
  auto* cmd_measures = app.add_subcommand("measures", "entanglement and steering of one parameter set");
  add_common(cmd_measures, true);
  auto* cmd_sweep = app.add_subcommand("sweep", "evaluate the pipeline over the configured grid");
  add_common(cmd_sweep, true);

  std::string figure_id;
  auto* cmd_figure = app.add_subcommand("figure", "run a reference figure sweep (2a 2b 3 4 5a 5b 6a 6b 7)");
  cmd_figure->add_option("id", figure_id, "figure id")->required();
  add_common(cmd_figure, false);

  int selftest_draws = 1000;
  uint64_t selftest_seed = 0x7215eedULL;
  auto* cmd_selftest = app.add_subcommand(
      "selftest", "run the analytic-oracle, solver and criterion-equivalence suites");
  cmd_selftest->add_option("--draws", selftest_draws, "random draws per suite");
  cmd_selftest->add_option("--seed", selftest_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_stability->parsed()) {
      print_stability(load_config(config_path, options).base);
    } else if (cmd_solve->parsed()) {
      print_solution(load_config(config_path, options).base);
    } else if (cmd_measures->parsed()) {
      const auto config = load_config(config_path, options);
      print_measures(config.base, config.pairs);
    } else if (cmd_sweep->parsed()) {
      const auto config = load_config(config_path, options);
      const SweepResult result = run_sweep(config.sweep_spec(), config.workers);
      emit(result, config.out_dir, "sweep", config.format, config.plot);
    } else if (cmd_figure->parsed()) {
      const auto format = options.format == "json" ? io::OutputFormat::json
                          : options.format == "both" ? io::OutputFormat::both
                                                     : io::OutputFormat::csv;
      const std::string out_dir = options.out_dir.empty() ? "." : options.out_dir;
      for (const auto& figure : reproduce_figure(figure_id, options.workers))
        emit(figure.result, out_dir, figure.label, format, options.plot);
    } else if (cmd_selftest->parsed()) {
      const auto report = selftest::run(selftest_draws, selftest_seed);
      for (const auto& check : report.checks)
        std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name << ": "
                  << check.detail << "\n";
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
