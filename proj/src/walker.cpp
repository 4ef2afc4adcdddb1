#include "qwalk/walker.hpp"

#include <algorithm>
#include <string>

namespace qwalk {

WalkerState::WalkerState(int lo, std::size_t size) : lo_(lo), a_(size), b_(size) {}

WalkerState WalkerState::for_support(int support_lo, int support_hi, int steps) {
  if (support_hi < support_lo || steps < 0) {
    throw SizingError("bad support [" + std::to_string(support_lo) + ", " +
                      std::to_string(support_hi) + "] for " + std::to_string(steps) + " steps");
  }
  const auto size = static_cast<std::size_t>(support_hi - support_lo) + 1 + 2 * static_cast<std::size_t>(steps);
  return WalkerState(support_lo - steps, size);
}

Complex WalkerState::a(int j) const noexcept {
  return (j < lo_ || j > hi()) ? Complex{} : a_[index(j)];
}

Complex WalkerState::b(int j) const noexcept {
  return (j < lo_ || j > hi()) ? Complex{} : b_[index(j)];
}

void WalkerState::set(int j, Complex up, Complex down) {
  if (t_ != 0) throw SizingError("amplitudes may only be set before the first step");
  if (j < lo_ || j > hi()) {
    throw SizingError("site " + std::to_string(j) + " outside window [" + std::to_string(lo_) +
                      ", " + std::to_string(hi()) + "]");
  }
  a_[index(j)] = up;
  b_[index(j)] = down;
  if (empty()) {
    first_ = last_ = j;
  } else {
    first_ = std::min(first_, j);
    last_ = std::max(last_, j);
  }
}

double WalkerState::norm() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) sum += std::norm(a_[i]) + std::norm(b_[i]);
  return sum;
}

}  // namespace qwalk
