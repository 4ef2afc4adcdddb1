#pragma once

#include <utility>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/walker.hpp"

namespace qwalk {

/// Spin state after tracing out position:
///   rho_C = [[alpha, gamma], [conj(gamma), 1 - alpha]]
struct ReducedSpinState {
  double alpha = 1.0;
  Complex gamma{};

  double beta() const noexcept { return 1.0 - alpha; }
};

// Values over a contiguous run of sites starting at `lo`.
struct SiteMap {
  int lo = 0;
  std::vector<double> values;

  int hi() const noexcept { return lo + static_cast<int>(values.size()) - 1; }
  double at(int j) const noexcept {
    return (j < lo || j > hi()) ? 0.0 : values[static_cast<std::size_t>(j - lo)];
  }
  double total() const noexcept;
};

using PositionDistribution = SiteMap;

struct ClassicalBaseline {
  int n = 0;
  PositionDistribution distribution;
  double dispersion = 0.0;
};

// alpha = sum |a(j)|^2, gamma = sum a(j) conj(b(j)).
ReducedSpinState reduce(const WalkerState& state) noexcept;

// Eigenvalues (lambda_plus, lambda_minus) of rho_C, clamped to [0,1] when
// within 1e-12 outside; lambda_plus + lambda_minus == 1 exactly. Throws
// DomainError when |gamma|^2 exceeds alpha (1 - alpha) beyond that slack.
std::pair<double, double> eigenvalues(const ReducedSpinState& r);

// Base-2 von Neumann entropy of rho_C, in [0,1].
double entropy(const ReducedSpinState& r);

// Shannon entropy (base 2) of a two-outcome spectrum, 0 log 0 = 0.
double binary_entropy(double lambda_plus, double lambda_minus) noexcept;

// Half the trace norm of the difference; equals sqrt(dalpha^2 + |dgamma|^2).
double trace_distance(const ReducedSpinState& r1, const ReducedSpinState& r2) noexcept;

PositionDistribution position_distribution(const WalkerState& state);

// sqrt(sum j^2 P(j) - (sum j P(j))^2); tiny negative variances from
// rounding are reported as 0.
double dispersion(const PositionDistribution& dist) noexcept;

// Exact distribution of the balanced classical walk after n steps from 0.
ClassicalBaseline classical_baseline(int n);

/// Spin reduction and dispersion from one pass over the active range; the
/// per-step hot path of ensemble runs.
struct StepSummary {
  ReducedSpinState spin;
  double dispersion = 0.0;
};

StepSummary summarize(const WalkerState& state) noexcept;

}  // namespace qwalk
