#pragma once

#include <Eigen/Dense>

#include "qwalk/disorder.hpp"
#include "qwalk/walker.hpp"

namespace qwalk::oracle {

// Largest step count the dense oracle accepts.
inline constexpr int kMaxOracleSteps = 12;

/// Explicit-matrix model of the walk on a truncated, periodically closed
/// lattice of `size` sites starting at `lo`. Basis index of |s>|j> is
/// s * size + (j - lo) with s = 0 for spin up and 1 for spin down.
struct Lattice {
  int lo;
  int size;

  Eigen::Index index(int spin, int j) const noexcept { return spin * size + (j - lo); }
  Eigen::Index dim() const noexcept { return 2 * size; }
};

// Conditional displacement: |up>|j> -> |up>|j+1>, |down>|j> -> |down>|j-1>.
Eigen::MatrixXcd shift_operator(const Lattice& lattice);

// Block-diagonal sum_j C(j,t) (x) |j><j|.
Eigen::MatrixXcd coin_operator(const Lattice& lattice, const CoinField& field, int t);

Eigen::VectorXcd to_vector(const WalkerState& state, const Lattice& lattice);

/// Evolves by explicit products U(t) = S C(t). Throws ValidationError for
/// steps > kMaxOracleSteps. The returned state has the same window as
/// `initial`.
WalkerState dense_oracle_evolve(const WalkerState& initial, const CoinField& field, int steps);

// Max |difference| over both amplitude fields, compared on the union window.
double max_amplitude_difference(const WalkerState& x, const WalkerState& y);

// Von Neumann entropy (base 2) of the position-reduced density matrix.
double position_entropy(const WalkerState& state);

struct OracleReport {
  int cases = 0;
  double max_difference = 0.0;
  double max_entropy_gap = 0.0;
};

/// The equivalence suite: `cases_per_setup` seeded random initial states
/// for every regime and both ensembles, `steps` steps each; compares
/// recurrence evolution against dense products and spin-side entropy
/// against position-side entropy.
OracleReport run_equivalence_suite(int steps, int cases_per_setup, std::uint64_t seed);

}  // namespace qwalk::oracle
