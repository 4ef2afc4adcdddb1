#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

enum class Regime {
  kOrdered,      // C(j,t) = C
  kDynamic,      // C(j,t) = C(t)
  kFluctuating,  // fresh coin per (j,t)
  kStatic,       // C(j,t) = C(j)
};

std::string_view to_string(Regime r) noexcept;
// Accepts "ordered", "dynamic", "fluctuating", "static"; throws ValidationError.
Regime parse_regime(std::string_view name);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Two fixed coins; c1 is drawn with probability p.
struct TwoCoin {
  CoinParams c1 = kHadamard;
  CoinParams c2 = kFourier;
  double p = 0.5;

  friend bool operator==(const TwoCoin&, const TwoCoin&) = default;
};

// q, theta and phi drawn independently and uniformly from their ranges.
struct ContinuousSU2 {
  Interval q{0.0, 1.0};
  Interval theta{0.0, kTwoPi};
  Interval phi{0.0, kTwoPi};

  friend bool operator==(const ContinuousSU2&, const ContinuousSU2&) = default;
};

using CoinEnsemble = std::variant<TwoCoin, ContinuousSU2>;

// Throws ValidationError for empty/out-of-range intervals, p outside [0,1]
// or out-of-range coins.
void validate(const CoinEnsemble& ensemble);

// Balanced-or-biased Hadamard/Fourier pair.
TwoCoin rqrw2(double p_hadamard = 0.5);
// Full parameter ranges.
ContinuousSU2 rqrw_inf();
// Degenerate ensemble that always yields `c`.
ContinuousSU2 fixed_coin(const CoinParams& c);

using Uniforms = std::array<double, 3>;

CoinParams sample_coin(const CoinEnsemble& ensemble, const Uniforms& u);

/// Counter-based keyed hashing. Every random value in the project is a
/// pure function of a key tuple, so results never depend on query order or
/// on how work is split across threads.
namespace keyed {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t word) noexcept {
  return mix64(h ^ mix64(word + kGolden));
}

// [0, 1) with 53 bits.
constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// The n-th uniform of the stream identified by `key`.
constexpr double uniform(std::uint64_t key, std::uint64_t n) noexcept {
  return to_unit(mix64(key + (n + 1) * kGolden));
}

}  // namespace keyed

/// Source of C(j,t) for one disorder realization.
///
/// A pure function of (regime, ensemble, seed, realization): querying the
/// same (j,t) twice gives the identical coin. The random key is t for
/// dynamic fields, j for static ones, (j,t) for fluctuating ones and a
/// single constant for ordered ones.
class CoinField {
 public:
  CoinField(Regime regime, CoinEnsemble ensemble, std::uint64_t seed, std::uint64_t realization);

  Regime regime() const noexcept { return regime_; }
  const CoinEnsemble& ensemble() const noexcept { return ensemble_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t realization() const noexcept { return realization_; }

  CoinParams params_at(int j, int t) const noexcept;
  CoinMatrix coin_at(int j, int t) const noexcept;

 private:
  std::uint64_t key_for(int j, int t) const noexcept;

  Regime regime_;
  CoinEnsemble ensemble_;
  std::uint64_t seed_;
  std::uint64_t realization_;
  std::uint64_t base_key_;
  // Precomputed matrices for TwoCoin ensembles.
  CoinMatrix first_{};
  CoinMatrix second_{};
};

/// Per-site coins of a static field, materialized once over [lo, hi].
/// Observationally identical to calling field.coin_at(j, t).
class StaticCoinTable {
 public:
  StaticCoinTable(const CoinField& field, int lo, int hi);

  const CoinMatrix& operator[](int j) const noexcept {
    return coins_[static_cast<std::size_t>(j - lo_)];
  }

 private:
  int lo_;
  std::vector<CoinMatrix> coins_;
};

}  // namespace qwalk
