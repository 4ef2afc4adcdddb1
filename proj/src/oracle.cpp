#include "qwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/observables.hpp"

namespace qwalk::oracle {

Eigen::MatrixXcd shift_operator(const Lattice& lattice) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(lattice.dim(), lattice.dim());
  for (int k = 0; k < lattice.size; ++k) {
    const int j = lattice.lo + k;
    // Periodic closure keeps S unitary; amplitudes never reach the seam
    // while the lattice covers the light cone.
    const int right = lattice.lo + (k + 1) % lattice.size;
    const int left = lattice.lo + (k + lattice.size - 1) % lattice.size;
    s(lattice.index(0, right), lattice.index(0, j)) = 1.0;
    s(lattice.index(1, left), lattice.index(1, j)) = 1.0;
  }
  return s;
}

Eigen::MatrixXcd coin_operator(const Lattice& lattice, const CoinField& field, int t) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(lattice.dim(), lattice.dim());
  for (int k = 0; k < lattice.size; ++k) {
    const int j = lattice.lo + k;
    const CoinMatrix m = field.coin_at(j, t);
    c(lattice.index(0, j), lattice.index(0, j)) = m.uu;
    c(lattice.index(0, j), lattice.index(1, j)) = m.ud;
    c(lattice.index(1, j), lattice.index(0, j)) = m.du;
    c(lattice.index(1, j), lattice.index(1, j)) = m.dd;
  }
  return c;
}

Eigen::VectorXcd to_vector(const WalkerState& state, const Lattice& lattice) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(lattice.dim());
  for (int j = lattice.lo; j < lattice.lo + lattice.size; ++j) {
    v(lattice.index(0, j)) = state.a(j);
    v(lattice.index(1, j)) = state.b(j);
  }
  return v;
}

WalkerState dense_oracle_evolve(const WalkerState& initial, const CoinField& field, int steps) {
  if (steps < 0 || steps > kMaxOracleSteps) {
    throw ValidationError("dense oracle accepts 0.." + std::to_string(kMaxOracleSteps) +
                          " steps, got " + std::to_string(steps));
  }
  const Lattice lattice{initial.lo(), static_cast<int>(initial.size())};
  const Eigen::MatrixXcd shift = shift_operator(lattice);
  Eigen::VectorXcd psi = to_vector(initial, lattice);
  for (int t = initial.t() + 1; t <= initial.t() + steps; ++t) {
    const Eigen::MatrixXcd unitary = shift * coin_operator(lattice, field, t);
    psi = unitary * psi;
  }
  WalkerState out(initial.lo(), initial.size());
  for (int j = lattice.lo; j < lattice.lo + lattice.size; ++j) {
    out.set(j, psi(lattice.index(0, j)), psi(lattice.index(1, j)));
  }
  return out;
}

double max_amplitude_difference(const WalkerState& x, const WalkerState& y) {
  double worst = 0.0;
  for (int j = std::min(x.lo(), y.lo()); j <= std::max(x.hi(), y.hi()); ++j) {
    worst = std::max({worst, std::abs(x.a(j) - y.a(j)), std::abs(x.b(j) - y.b(j))});
  }
  return worst;
}

double position_entropy(const WalkerState& state) {
  const auto n = static_cast<Eigen::Index>(state.size());
  Eigen::VectorXcd up(n);
  Eigen::VectorXcd down(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    up(i) = state.up()[static_cast<std::size_t>(i)];
    down(i) = state.down()[static_cast<std::size_t>(i)];
  }
  const Eigen::MatrixXcd rho = up * up.adjoint() + down * down.adjoint();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda > 1e-15) s -= lambda * std::log2(lambda);
  }
  return s;
}

namespace {

// Random normalized state on a 1-3 site support around the origin.
WalkerState random_state(std::uint64_t key, int steps) {
  const int width = 1 + static_cast<int>(keyed::uniform(key, 0) * 3.0);
  const int first = -width / 2;
  WalkerState state = WalkerState::for_support(first, first + width - 1, steps);
  std::vector<Complex> amps;
  double norm = 0.0;
  std::uint64_t n = 1;
  for (int k = 0; k < 2 * width; ++k) {
    const Complex z(keyed::uniform(key, n) - 0.5, keyed::uniform(key, n + 1) - 0.5);
    n += 2;
    amps.push_back(z);
    norm += std::norm(z);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (int k = 0; k < width; ++k) {
    state.set(first + k, amps[static_cast<std::size_t>(2 * k)] * scale,
              amps[static_cast<std::size_t>(2 * k + 1)] * scale);
  }
  return state;
}

}  // namespace

OracleReport run_equivalence_suite(int steps, int cases_per_setup, std::uint64_t seed) {
  OracleReport report;
  const CoinEnsemble ensembles[] = {rqrw2(0.5), rqrw_inf()};
  for (Regime regime : {Regime::kOrdered, Regime::kDynamic, Regime::kFluctuating, Regime::kStatic}) {
    for (std::size_t e = 0; e < 2; ++e) {
      for (int c = 0; c < cases_per_setup; ++c) {
        const std::uint64_t key = keyed::combine(
            keyed::combine(keyed::combine(seed, static_cast<std::uint64_t>(regime)), e),
            static_cast<std::uint64_t>(c));
        const WalkerState initial = random_state(key, steps);
        const CoinField field(regime, ensembles[e], seed, key);
        const WalkerState fast = evolve(initial, field, steps);
        const WalkerState dense = dense_oracle_evolve(initial, field, steps);
        report.max_difference = std::max(report.max_difference, max_amplitude_difference(fast, dense));
        report.max_entropy_gap = std::max(report.max_entropy_gap,
                                          std::abs(entropy(reduce(fast)) - position_entropy(dense)));
        ++report.cases;
      }
    }
  }
  return report;
}

}  // namespace qwalk::oracle
