// Command-line front end: run, fit, compare, oracle-check.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/report.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kDomain = 3, kIo = 4 };

qwalk::ExperimentConfig load_with_overrides(const std::string& path, std::optional<std::uint64_t> seed,
                                            const std::string& out) {
  qwalk::ExperimentConfig config = qwalk::load_config(path);
  if (seed) config.seed = *seed;
  if (!out.empty()) config.out_dir = out;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disordered discrete-time quantum walk simulator"};
  app.require_subcommand(1);

  std::vector<std::string> config_paths;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out_dir;
  std::string timeseries_path;
  int drop_first = 100;
  int oracle_steps = 8;
  int oracle_cases = 100;

  auto* run = app.add_subcommand("run", "Run one ensemble experiment and write CSV/JSON outputs");
  run->add_option("--config", config_paths, "Experiment config (key = value or JSON)")->required()->expected(1);
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--threads", threads, "Worker threads (0 = all cores); never changes results")->check(CLI::NonNegativeNumber);
  run->add_option("--out", out_dir, "Override the output directory");

  auto* fit = app.add_subcommand("fit", "Fit a power law to mean_distance of a timeseries.csv");
  fit->add_option("--timeseries", timeseries_path, "timeseries.csv written by run")->required();
  fit->add_option("--drop-first", drop_first, "Leading points to exclude")->check(CLI::NonNegativeNumber);
  fit->add_option("--out", out_dir, "Directory for fit.json (default: next to the timeseries)");

  auto* cmp = app.add_subcommand("compare", "Run several configs and write aligned series");
  cmp->add_option("--config", config_paths, "Experiment configs (repeat the flag)")->required();
  cmp->add_option("--seed", seed, "Override every config seed");
  cmp->add_option("--threads", threads, "Worker threads (0 = all cores); never changes results")->check(CLI::NonNegativeNumber);
  cmp->add_option("--out", out_dir, "Output directory")->required();

  auto* oracle = app.add_subcommand("oracle-check", "Compare recurrence and dense-matrix evolution");
  oracle->add_option("--steps", oracle_steps, "Steps per case (<= 12)");
  oracle->add_option("--cases", oracle_cases, "Cases per regime and ensemble");
  oracle->add_option("--seed", seed, "Seed for the random cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*run) {
      const auto config = load_with_overrides(config_paths.front(), seed, out_dir);
      const auto output = qwalk::execute(config, threads);
      qwalk::write_run(config.out_dir, output);
      std::printf("%s: %zu realizations, %d steps, final <S_E> = %.6f, %.2f s -> %s\n",
                  qwalk::display_label(config).c_str(), output.result.count, config.steps,
                  output.result.mean_final_entropy, output.wall_seconds, config.out_dir.c_str());
    } else if (*fit) {
      const std::filesystem::path ts(timeseries_path);
      const std::filesystem::path dir = out_dir.empty() ? ts.parent_path() : std::filesystem::path(out_dir);
      const auto result = qwalk::fit_timeseries(ts, drop_first, dir.empty() ? "." : dir);
      std::printf("slope = %.6f +- %.6f (95%% CI [%.6f, %.6f]), intercept = %.6f, %d points\n", result.slope,
                  result.slope_stderr, result.ci95.first, result.ci95.second, result.intercept, result.points_used);
    } else if (*cmp) {
      std::vector<qwalk::ExperimentConfig> configs;
      for (const auto& path : config_paths) configs.push_back(load_with_overrides(path, seed, ""));
      const auto summary = qwalk::compare(configs, threads, out_dir);
      for (const auto& entry : summary.at("final_mean_entropy")) {
        std::printf("%-28s %.6f\n", entry.at("label").get<std::string>().c_str(),
                    entry.at("final_mean_entropy").get<double>());
      }
    } else if (*oracle) {
      const auto report = qwalk::oracle::run_equivalence_suite(oracle_steps, oracle_cases, seed.value_or(2024));
      const bool ok = report.max_difference < 1e-12 && report.max_entropy_gap < 1e-10;
      std::printf("%d cases, max |amplitude difference| = %.3e, max entropy gap = %.3e: %s\n", report.cases,
                  report.max_difference, report.max_entropy_gap, ok ? "PASS" : "FAIL");
      return ok ? kOk : kDomain;
    }
  } catch (const qwalk::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const qwalk::DomainError& e) {
    std::cerr << "numerical-domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const qwalk::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
