#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "qwalk/disorder.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/walker.hpp"

namespace qwalk {

// cos(alpha)|up> + e^{i beta} sin(alpha)|down>
struct SpinAngles {
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const SpinAngles&, const SpinAngles&) = default;
};

// (|up> + i|down>)/sqrt(2) and (|up> + |down>)/sqrt(2).
inline constexpr SpinAngles kXi1{std::numbers::pi / 4, std::numbers::pi / 2};
inline constexpr SpinAngles kXi2{std::numbers::pi / 4, 0.0};

struct Localized {
  int site = 0;

  friend bool operator==(const Localized&, const Localized&) = default;
};

// cos(alpha)|-1> + e^{i beta} sin(alpha)|+1>
struct TwoSite {
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const TwoSite&, const TwoSite&) = default;
};

// Discretized Gaussian centred at 0 with position variance sigma^2,
// truncated at |j| <= ceil(cutoff_multiple * sigma).
struct Gaussian {
  double sigma = 1.0;
  double cutoff_multiple = 6.0;

  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

using PositionPart = std::variant<Localized, TwoSite, Gaussian>;

// Separable product of a spin part and a position part.
struct InitialCondition {
  SpinAngles spin;
  PositionPart position = Localized{};

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

enum class IcKind { kTwoSite, kLocalized };

// Normalized walker with a window big enough for `steps` steps.
WalkerState prepare(const InitialCondition& ic, int steps);

// Inclusive [first, last] sites where the position part may be nonzero.
std::pair<int, int> support(const InitialCondition& ic);

// Grid values {k * delta : k >= 0, k * delta <= upper}.
std::vector<double> grid_axis(double delta, double upper);

// All (alpha_s, beta_s, alpha_p, beta_p) with alpha in grid_axis(delta, pi)
// and beta in grid_axis(delta, 2 pi), alpha_s outermost.
std::vector<InitialCondition> grid_two_site(double delta);
std::vector<InitialCondition> grid_localized(double delta);

// Angles uniform in [0, pi] x [0, 2 pi], keyed on (seed, index).
std::vector<InitialCondition> random_ics(int count, std::uint64_t seed, IcKind kind);

// psi(j) >= 0 with psi(j)^2 a discretized normal density of variance sigma^2.
SiteMap gaussian_profile(double sigma, double cutoff_multiple = 6.0);

struct EnsembleConfig {
  Regime regime = Regime::kOrdered;
  CoinEnsemble ensemble = rqrw2();
  std::vector<InitialCondition> ics;
  int steps = 0;
  std::uint64_t seed = 0;
  std::vector<double> thresholds{0.95, 0.97, 0.99};
  // Disorder realizations per initial condition.
  int replicas = 1;
  // Worker threads; 0 means hardware concurrency. Never affects results.
  int threads = 1;
};

struct ThresholdRate {
  double threshold = 0.0;
  double fraction = 0.0;
};

/// Realization averages. Series entry k describes time t = k + 1; the
/// distance series compares rho_C(t) against rho_C(t - 1).
struct EnsembleResult {
  std::vector<double> mean_entropy;
  std::vector<double> mean_distance;
  std::vector<double> mean_dispersion;
  // Average position distribution at the final step.
  SiteMap mean_distribution;
  // Average entropy at the final step (t = steps, which may be 0).
  double mean_final_entropy = 0.0;
  std::size_t count = 0;
  std::vector<ThresholdRate> threshold_rates;
};

/// Evolves every (initial condition, replica) pair under its own coin field
/// (realization id = ic_index * replicas + replica) and averages. Per-
/// realization results are reduced strictly in realization order, so the
/// output is bit-identical for any thread count.
EnsembleResult run_ensemble(const EnsembleConfig& config);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  int points_used = 0;
  int points_dropped = 0;
};

/// Least squares of ln(value) on ln(t), with t = index + 1, over the points
/// after the first `drop_first`. ci95 is the normal-approximation interval.
PowerLawFit fit_power_law(std::span<const double> series, int drop_first);

// Least-squares slope of ln(series) on ln(t) restricted to t in [t_lo, t_hi].
double log_log_slope(std::span<const double> series, int t_lo, int t_hi);

}  // namespace qwalk
