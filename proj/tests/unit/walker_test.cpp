#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/oracle.hpp"

namespace qwalk {
namespace {

const double kH = 1.0 / std::sqrt(2.0);

WalkerState spin_up_at_origin(int steps) {
  WalkerState s = WalkerState::for_support(0, 0, steps);
  s.set(0, 1.0, 0.0);
  return s;
}

CoinField ordered(const CoinParams& c) { return CoinField(Regime::kOrdered, fixed_coin(c), 0, 0); }

TEST(Step, SingleHadamardStep) {
  WalkerState s = spin_up_at_origin(1);
  const CoinMatrix h = coin_matrix(kHadamard);
  step(s, [&](int) { return h; });
  EXPECT_EQ(s.t(), 1);
  EXPECT_NEAR(s.a(1).real(), kH, 1e-15);
  EXPECT_NEAR(s.b(-1).real(), kH, 1e-15);
  EXPECT_EQ(s.a(-1), Complex{});
  EXPECT_EQ(s.b(1), Complex{});
  EXPECT_EQ(s.a(0), Complex{});
  EXPECT_EQ(s.b(0), Complex{});
}

TEST(Step, DiagonalCoinMovesSpinUpRight) {
  const int n = 25;
  const WalkerState s = evolve(spin_up_at_origin(n), ordered({1.0, 0.0, 0.0}), n);
  for (int j = s.lo(); j <= s.hi(); ++j) {
    EXPECT_EQ(s.a(j), j == n ? Complex(1.0) : Complex{}) << j;
    EXPECT_EQ(s.b(j), Complex{}) << j;
  }
}

// Hand iteration of the recurrence: a(2)=a(0)=b(0)=1/2, b(-2)=-1/2.
TEST(Step, TwoHadamardSteps) {
  const WalkerState s = evolve(spin_up_at_origin(2), ordered(kHadamard), 2);
  EXPECT_NEAR(std::abs(s.a(2) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.a(0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.b(0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.b(-2) + 0.5), 0.0, 1e-15);
  for (int j : {-1, 1}) {
    EXPECT_EQ(s.a(j), Complex{});
    EXPECT_EQ(s.b(j), Complex{});
  }
  EXPECT_EQ(s.a(-2), Complex{});
  EXPECT_EQ(s.b(2), Complex{});
}

TEST(Step, WindowOverflowIsASizingError) {
  WalkerState s = spin_up_at_origin(1);
  const CoinMatrix h = coin_matrix(kHadamard);
  step(s, [&](int) { return h; });
  EXPECT_THROW(step(s, [&](int) { return h; }), SizingError);
}

TEST(Step, SetAfterStartIsRejected) {
  WalkerState s = spin_up_at_origin(2);
  EXPECT_THROW(s.set(5, 1.0, 0.0), SizingError);
  s = evolve(s, ordered(kHadamard), 1);
  EXPECT_THROW(s.set(0, 1.0, 0.0), SizingError);
}

TEST(Evolve, ZeroStepsIsIdentity) {
  const WalkerState init = prepare({{0.3, 1.2}, TwoSite{0.7, 2.0}}, 5);
  for (Regime r : {Regime::kOrdered, Regime::kDynamic, Regime::kFluctuating, Regime::kStatic}) {
    const WalkerState out = evolve(init, CoinField(r, rqrw_inf(), 3, 4), 0);
    EXPECT_EQ(out.t(), 0);
    EXPECT_EQ(oracle::max_amplitude_difference(out, init), 0.0);
  }
}

TEST(Evolve, ObserverSeesEveryStep) {
  std::vector<int> times;
  evolve(spin_up_at_origin(7), ordered(kHadamard), 7, [&](const WalkerState& s) { times.push_back(s.t()); });
  EXPECT_EQ(times, (std::vector<int>{1, 2, 3, 4, 5, 6, 7}));
}

// Random states and fields; the full 1e4-pair sweep lives in the
// acceptance suite.
TEST(Evolve, NormConservation) {
  const CoinEnsemble ensembles[] = {rqrw2(0.3), rqrw_inf()};
  double worst = 0.0;
  int pair = 0;
  for (Regime r : {Regime::kOrdered, Regime::kDynamic, Regime::kFluctuating, Regime::kStatic}) {
    for (const auto& e : ensembles) {
      for (int k = 0; k < 4; ++k, ++pair) {
        const auto ic = random_ics(1, static_cast<std::uint64_t>(pair), IcKind::kTwoSite).front();
        const WalkerState out = evolve(prepare(ic, 1000), CoinField(r, e, 11, static_cast<std::uint64_t>(pair)), 1000);
        worst = std::max(worst, std::abs(1.0 - out.norm()));
      }
    }
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Evolve, LightConeAndParity) {
  for (Regime r : {Regime::kOrdered, Regime::kDynamic, Regime::kFluctuating, Regime::kStatic}) {
    const CoinField field(r, rqrw_inf(), 5, 6);
    WalkerState s = WalkerState::for_support(0, 0, 60);
    s.set(0, Complex(0.6, 0.0), Complex(0.0, 0.8));
    evolve(s, field, 60, [&](const WalkerState& w) {
      for (int j = w.lo(); j <= w.hi(); ++j) {
        if (std::abs(j) > w.t() || (j + w.t()) % 2 != 0) {
          ASSERT_EQ(w.a(j), Complex{}) << "t=" << w.t() << " j=" << j;
          ASSERT_EQ(w.b(j), Complex{}) << "t=" << w.t() << " j=" << j;
        }
      }
      ASSERT_LE(w.lo(), -w.t());
      ASSERT_GE(w.hi(), w.t());
    });
  }
}

// A field whose ensemble is one fixed coin must reproduce the ordered walk
// bit for bit in every regime.
TEST(Evolve, OrderedReduction) {
  const InitialCondition ic{{0.4, 2.5}, TwoSite{1.1, 0.3}};
  const CoinParams coin{0.3, 1.0, 2.0};
  const WalkerState reference = evolve(prepare(ic, 200), CoinField(Regime::kOrdered, fixed_coin(coin), 1, 0), 200);
  for (const CoinEnsemble& e : {CoinEnsemble(fixed_coin(coin)), CoinEnsemble(TwoCoin{coin, coin, 0.5})}) {
    for (Regime r : {Regime::kDynamic, Regime::kFluctuating, Regime::kStatic}) {
      const WalkerState out = evolve(prepare(ic, 200), CoinField(r, e, 99, 17), 200);
      ASSERT_EQ(out.lo(), reference.lo());
      for (int j = out.lo(); j <= out.hi(); ++j) {
        ASSERT_EQ(out.a(j), reference.a(j));
        ASSERT_EQ(out.b(j), reference.b(j));
      }
    }
  }
}

TEST(DenseOracle, ShiftMovesSpinUpRight) {
  const oracle::Lattice lattice{-3, 7};
  const Eigen::MatrixXcd s = oracle::shift_operator(lattice);
  for (int j = -2; j <= 2; ++j) {
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(lattice.dim());
    up(lattice.index(0, j)) = 1.0;
    const Eigen::VectorXcd moved = s * up;
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(lattice.dim());
    expected(lattice.index(0, j + 1)) = 1.0;
    EXPECT_EQ((moved - expected).norm(), 0.0);

    Eigen::VectorXcd down = Eigen::VectorXcd::Zero(lattice.dim());
    down(lattice.index(1, j)) = 1.0;
    Eigen::VectorXcd expected_down = Eigen::VectorXcd::Zero(lattice.dim());
    expected_down(lattice.index(1, j - 1)) = 1.0;
    EXPECT_EQ((s * down - expected_down).norm(), 0.0);
  }
  EXPECT_LT((s.adjoint() * s - Eigen::MatrixXcd::Identity(lattice.dim(), lattice.dim())).norm(), 1e-15);
}

TEST(DenseOracle, OneStepMatchesRecurrence) {
  const WalkerState init = spin_up_at_origin(1);
  const CoinField field = ordered(kHadamard);
  EXPECT_LT(oracle::max_amplitude_difference(evolve(init, field, 1), oracle::dense_oracle_evolve(init, field, 1)),
            1e-16);
}

TEST(DenseOracle, EightStepFluctuatingField) {
  const CoinField field(Regime::kFluctuating, rqrw_inf(), 123, 4);
  const WalkerState init = prepare({{0.9, 0.2}, TwoSite{0.5, 4.0}}, 8);
  EXPECT_LT(oracle::max_amplitude_difference(evolve(init, field, 8), oracle::dense_oracle_evolve(init, field, 8)),
            1e-12);
}

TEST(DenseOracle, RefusesLargeStepCounts) {
  const WalkerState init = spin_up_at_origin(13);
  EXPECT_THROW(oracle::dense_oracle_evolve(init, ordered(kHadamard), 13), ValidationError);
}

TEST(DenseOracle, EquivalenceAllRegimesUpToEightSteps) {
  for (int n = 1; n <= 8; ++n) {
    const auto report = oracle::run_equivalence_suite(n, 10, 42 + static_cast<std::uint64_t>(n));
    EXPECT_EQ(report.cases, 80);
    EXPECT_LT(report.max_difference, 1e-12) << "n=" << n;
  }
}

// Spin-side and position-side entropies of a pure state agree.
TEST(DenseOracle, SchmidtSymmetry) {
  const auto report = oracle::run_equivalence_suite(12, 5, 77);
  EXPECT_LT(report.max_entropy_gap, 1e-10);
}

}  // namespace
}  // namespace qwalk
