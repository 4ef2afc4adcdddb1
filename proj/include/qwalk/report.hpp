#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "qwalk/config.hpp"
#include "qwalk/experiments.hpp"

namespace qwalk {

inline constexpr const char* kVersion = "qwalk 1.0.0";

// Fixed 17-significant-digit rendering used in every CSV.
std::string format_number(double v);

struct RunOutput {
  ExperimentConfig config;
  EnsembleResult result;
  double wall_seconds = 0.0;
};

// Runs one experiment (no files written).
RunOutput execute(const ExperimentConfig& config, int threads);

/// Writes timeseries.csv, distribution.csv, thresholds.csv and meta.json
/// into `dir`, creating it if needed. Throws IoError.
void write_run(const std::filesystem::path& dir, const RunOutput& run);

nlohmann::json meta_json(const RunOutput& run);

struct Timeseries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Throws ValidationError if the column is missing.
  std::vector<double> column(const std::string& name) const;
};

Timeseries read_csv(const std::filesystem::path& path);

nlohmann::json fit_json(const PowerLawFit& fit);

// Reads mean_distance from a timeseries file and writes fit.json into `dir`.
PowerLawFit fit_timeseries(const std::filesystem::path& timeseries, int drop_first,
                           const std::filesystem::path& dir);

/// Runs every config (at least two, all with the same step count) and
/// writes per-run outputs in `dir/<label>/`, aligned entropy.csv,
/// distance.csv, dispersion.csv and distribution.csv, and summary.json with
/// final mean entropies sorted in descending order.
nlohmann::json compare(const std::vector<ExperimentConfig>& configs, int threads,
                       const std::filesystem::path& dir);

}  // namespace qwalk
