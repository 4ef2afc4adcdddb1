#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#if defined(__SSE2__) || defined(_M_X64)
#include <xmmintrin.h>
#endif

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

/// Pure state of a walker on a finite window of the integer lattice.
///
/// Amplitudes a(j) (spin up) and b(j) (spin down) are stored densely for
/// sites lo() .. hi(). The window is fixed at construction and must cover
/// the light cone of every step that will be taken; step() throws
/// SizingError instead of silently truncating. The active range
/// [first(), last()] is the initial support dilated by one site per step
/// and bounds every nonzero amplitude.
class WalkerState {
 public:
  WalkerState(int lo, std::size_t size);

  // Window covering `support_lo - steps .. support_hi + steps`.
  static WalkerState for_support(int support_lo, int support_hi, int steps);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(a_.size()) - 1; }
  std::size_t size() const noexcept { return a_.size(); }
  int t() const noexcept { return t_; }

  bool empty() const noexcept { return first_ > last_; }
  int first() const noexcept { return first_; }
  int last() const noexcept { return last_; }

  // Zero outside the window.
  Complex a(int j) const noexcept;
  Complex b(int j) const noexcept;

  std::span<const Complex> up() const noexcept { return a_; }
  std::span<const Complex> down() const noexcept { return b_; }

  // Only valid before the first step; widens the active range to include j.
  void set(int j, Complex up, Complex down);

  double norm() const noexcept;

  template <class CoinLookup>
  friend void step(WalkerState& state, CoinLookup&& coin_at_site);

 private:
  std::size_t index(int j) const noexcept { return static_cast<std::size_t>(j - lo_); }

  int lo_;
  int t_ = 0;
  int first_ = 1;
  int last_ = 0;
  std::vector<Complex> a_;
  std::vector<Complex> b_;
};

namespace detail {

// c1 * x + c2 * y written out in reals; std::complex multiplication carries
// inf/nan recovery that blocks vectorization and costs a libcall.
inline Complex mul_add(Complex c1, Complex x, Complex c2, Complex y) noexcept {
  return {c1.real() * x.real() - c1.imag() * x.imag() + c2.real() * y.real() - c2.imag() * y.imag(),
          c1.real() * x.imag() + c1.imag() * x.real() + c2.real() * y.imag() + c2.imag() * y.real()};
}

// Flush-to-zero and denormals-are-zero for the guard's lifetime on x86;
// a no-op elsewhere.
class SubnormalGuard {
 public:
#if defined(__SSE2__) || defined(_M_X64)
  SubnormalGuard() noexcept : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040u); }
  ~SubnormalGuard() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
 public:
  SubnormalGuard(const SubnormalGuard&) = delete;
  SubnormalGuard& operator=(const SubnormalGuard&) = delete;
};

}  // namespace detail

/// Advances the state by one time step:
///   a(j,t) = c_uu(j-1) a(j-1,t-1) + c_ud(j-1) b(j-1,t-1)
///   b(j,t) = c_du(j+1) a(j+1,t-1) + c_dd(j+1) b(j+1,t-1)
/// `coin_at_site(j)` returns the coin acting at site j for the step being
/// taken. Each coin is queried at most once, at the source site, and only
/// where the source amplitudes are nonzero; the update is done in place in
/// a single ascending sweep.
template <class CoinLookup>
void step(WalkerState& state, CoinLookup&& coin_at_site) {
  ++state.t_;
  if (state.empty()) return;
  if (state.first_ - 1 < state.lo_ || state.last_ + 1 > state.hi()) {
    throw SizingError("walker window [" + std::to_string(state.lo_) + ", " +
                      std::to_string(state.hi()) + "] cannot hold step " + std::to_string(state.t_));
  }
  Complex* a = state.a_.data() - state.lo_;
  Complex* b = state.b_.data() - state.lo_;
  Complex pending{};
  for (int j = state.first_; j <= state.last_; ++j) {
    const Complex up = a[j];
    const Complex down = b[j];
    if (up == Complex{} && down == Complex{}) {
      b[j - 1] = Complex{};
      a[j] = pending;
      pending = Complex{};
      continue;
    }
    const CoinMatrix& c = coin_at_site(j);
    b[j - 1] = detail::mul_add(c.du, up, c.dd, down);
    a[j] = pending;
    pending = detail::mul_add(c.uu, up, c.ud, down);
  }
  a[state.last_ + 1] = pending;
  b[state.last_] = Complex{};
  --state.first_;
  ++state.last_;
}

}  // namespace qwalk
