#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qwalk/disorder.hpp"
#include "qwalk/experiments.hpp"

namespace qwalk {

enum class IcFamily {
  kGridTwoSite,
  kGridLocalized,
  kRandomTwoSite,
  kRandomLocalized,
  kGaussian,
  kLocalized,
};

std::string_view to_string(IcFamily f) noexcept;
IcFamily parse_ic_family(std::string_view name);

/// One experiment as read from a config file. Defaults: continuous
/// full-range ensemble, 1000 steps, thresholds 0.95/0.97/0.99
/// and a fit that drops the first 100 points.
struct ExperimentConfig {
  std::string label;
  Regime regime = Regime::kDynamic;
  CoinEnsemble ensemble = rqrw_inf();
  int steps = 1000;

  IcFamily ic = IcFamily::kRandomLocalized;
  double ic_delta = 0.4;
  int ic_count = 500;
  double sigma = 1.0;
  double cutoff = 6.0;
  // Spin of gaussian and single localized initial conditions.
  SpinAngles spin = kXi1;

  std::uint64_t seed = 1;
  std::vector<double> thresholds{0.95, 0.97, 0.99};
  int drop_first = 100;
  int replicas = 1;
  std::string out_dir = "out";
};

// Throws ValidationError naming the offending field.
void validate(const ExperimentConfig& config);

// Flat `key = value` text (with `#` comments) or a JSON object; a JSON
// object with a "config" member (as in meta.json) is also accepted.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

// "<regime>-<ensemble>" unless a label was given.
std::string display_label(const ExperimentConfig& config);

std::vector<InitialCondition> build_initial_conditions(const ExperimentConfig& config);
EnsembleConfig to_ensemble_config(const ExperimentConfig& config, int threads);

// Reals with optional pi notation: "1.5", "pi", "2pi", "pi/2", "0.25pi".
double parse_real(std::string_view text, std::string_view field);

}  // namespace qwalk
