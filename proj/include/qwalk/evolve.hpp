#pragma once

#include <utility>

#include "qwalk/disorder.hpp"
#include "qwalk/walker.hpp"

namespace qwalk {

struct NoObserver {
  void operator()(const WalkerState&) const noexcept {}
};

/// Applies `steps` steps drawing C(j,t) from `field` for t = state.t()+1, ...
/// and calls `observer(state)` after each one.
///
/// The coin lookup is specialised per regime: one coin per step for ordered
/// and dynamic fields, a per-site table for static fields and a fresh draw
/// per (j,t) for fluctuating ones. All produce the same coins as
/// field.coin_at(j,t).
template <class Observer = NoObserver>
void evolve_in_place(WalkerState& state, const CoinField& field, int steps, Observer&& observer = {}) {
  if (steps < 0) throw SizingError("negative step count");
  const detail::SubnormalGuard flush_subnormals;
  switch (field.regime()) {
    case Regime::kOrdered: {
      const CoinMatrix coin = field.coin_at(0, 1);
      for (int s = 0; s < steps; ++s) {
        step(state, [&](int) -> const CoinMatrix& { return coin; });
        observer(std::as_const(state));
      }
      break;
    }
    case Regime::kDynamic:
      for (int s = 0; s < steps; ++s) {
        const CoinMatrix coin = field.coin_at(0, state.t() + 1);
        step(state, [&](int) -> const CoinMatrix& { return coin; });
        observer(std::as_const(state));
      }
      break;
    case Regime::kStatic: {
      const StaticCoinTable table(field, state.lo(), state.hi());
      for (int s = 0; s < steps; ++s) {
        step(state, [&](int j) -> const CoinMatrix& { return table[j]; });
        observer(std::as_const(state));
      }
      break;
    }
    case Regime::kFluctuating:
      for (int s = 0; s < steps; ++s) {
        const int t = state.t() + 1;
        step(state, [&](int j) { return field.coin_at(j, t); });
        observer(std::as_const(state));
      }
      break;
  }
}

template <class Observer = NoObserver>
WalkerState evolve(WalkerState initial, const CoinField& field, int steps, Observer&& observer = {}) {
  evolve_in_place(initial, field, steps, std::forward<Observer>(observer));
  return initial;
}

}  // namespace qwalk
