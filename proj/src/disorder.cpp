#include "qwalk/disorder.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr std::uint64_t kFieldDomain = 0x636f696e6669656cULL;  // "coinfiel"

void check_interval(const char* name, const Interval& iv, double lo, double hi) {
  if (!(iv.lo >= lo && iv.hi <= hi && iv.lo <= iv.hi)) {
    throw ValidationError(std::string("ensemble range ") + name + " = [" + std::to_string(iv.lo) +
                          ", " + std::to_string(iv.hi) + "] must be a nonempty subinterval of [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

double affine(const Interval& iv, double u) noexcept { return iv.lo + u * (iv.hi - iv.lo); }

}  // namespace

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::kOrdered:
      return "ordered";
    case Regime::kDynamic:
      return "dynamic";
    case Regime::kFluctuating:
      return "fluctuating";
    case Regime::kStatic:
      return "static";
  }
  return "unknown";
}

Regime parse_regime(std::string_view name) {
  for (Regime r : {Regime::kOrdered, Regime::kDynamic, Regime::kFluctuating, Regime::kStatic}) {
    if (name == to_string(r)) return r;
  }
  throw ValidationError("regime: unknown value '" + std::string(name) +
                        "' (expected ordered|dynamic|fluctuating|static)");
}

void validate(const CoinEnsemble& ensemble) {
  if (const auto* two = std::get_if<TwoCoin>(&ensemble)) {
    if (!(two->p >= 0.0 && two->p <= 1.0)) {
      throw ValidationError("ensemble p = " + std::to_string(two->p) + " outside [0, 1]");
    }
    try {
      validate(two->c1);
      validate(two->c2);
    } catch (const DomainError& e) {
      throw ValidationError(std::string("ensemble coin: ") + e.what());
    }
    return;
  }
  const auto& cont = std::get<ContinuousSU2>(ensemble);
  check_interval("q", cont.q, 0.0, 1.0);
  check_interval("theta", cont.theta, 0.0, kTwoPi);
  check_interval("phi", cont.phi, 0.0, kTwoPi);
}

TwoCoin rqrw2(double p_hadamard) { return TwoCoin{kHadamard, kFourier, p_hadamard}; }

ContinuousSU2 rqrw_inf() { return ContinuousSU2{}; }

ContinuousSU2 fixed_coin(const CoinParams& c) {
  return ContinuousSU2{{c.q, c.q}, {c.theta, c.theta}, {c.phi, c.phi}};
}

CoinParams sample_coin(const CoinEnsemble& ensemble, const Uniforms& u) {
  if (const auto* two = std::get_if<TwoCoin>(&ensemble)) {
    return u[0] < two->p ? two->c1 : two->c2;
  }
  const auto& cont = std::get<ContinuousSU2>(ensemble);
  return CoinParams{affine(cont.q, u[0]), affine(cont.theta, u[1]), affine(cont.phi, u[2])};
}

CoinField::CoinField(Regime regime, CoinEnsemble ensemble, std::uint64_t seed, std::uint64_t realization)
    : regime_(regime), ensemble_(std::move(ensemble)), seed_(seed), realization_(realization) {
  validate(ensemble_);
  std::uint64_t h = keyed::combine(kFieldDomain, seed);
  h = keyed::combine(h, realization);
  base_key_ = keyed::combine(h, static_cast<std::uint64_t>(regime));
  if (const auto* two = std::get_if<TwoCoin>(&ensemble_)) {
    first_ = coin_matrix_unchecked(two->c1);
    second_ = coin_matrix_unchecked(two->c2);
  }
}

std::uint64_t CoinField::key_for(int j, int t) const noexcept {
  std::uint64_t site = 0;
  std::uint64_t time = 0;
  switch (regime_) {
    case Regime::kOrdered:
      break;
    case Regime::kDynamic:
      time = static_cast<std::uint32_t>(t);
      break;
    case Regime::kStatic:
      site = static_cast<std::uint32_t>(j);
      break;
    case Regime::kFluctuating:
      site = static_cast<std::uint32_t>(j);
      time = static_cast<std::uint32_t>(t);
      break;
  }
  return keyed::combine(base_key_, (site << 32) | time);
}

CoinParams CoinField::params_at(int j, int t) const noexcept {
  const std::uint64_t key = key_for(j, t);
  if (std::holds_alternative<TwoCoin>(ensemble_)) {
    // Only the first uniform is consumed by a two-coin draw.
    return sample_coin(ensemble_, Uniforms{keyed::uniform(key, 0), 0.0, 0.0});
  }
  return sample_coin(ensemble_,
                     Uniforms{keyed::uniform(key, 0), keyed::uniform(key, 1), keyed::uniform(key, 2)});
}

CoinMatrix CoinField::coin_at(int j, int t) const noexcept {
  if (const auto* two = std::get_if<TwoCoin>(&ensemble_)) {
    return keyed::uniform(key_for(j, t), 0) < two->p ? first_ : second_;
  }
  return coin_matrix_unchecked(params_at(j, t));
}

StaticCoinTable::StaticCoinTable(const CoinField& field, int lo, int hi) : lo_(lo) {
  coins_.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int j = lo; j <= hi; ++j) coins_.push_back(field.coin_at(j, 1));
}

}  // namespace qwalk
