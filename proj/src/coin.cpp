#include "qwalk/coin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void check_range(const char* name, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi)) {
    throw DomainError(std::string("coin parameter ") + name + " = " + std::to_string(v) +
                      " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

void validate(const CoinParams& p) {
  check_range("q", p.q, 0.0, 1.0);
  check_range("theta", p.theta, 0.0, kTwoPi);
  check_range("phi", p.phi, 0.0, kTwoPi);
}

CoinMatrix coin_matrix(const CoinParams& p) {
  validate(p);
  return coin_matrix_unchecked(p);
}

CoinMatrix coin_matrix_unchecked(const CoinParams& p) noexcept {
  const double diag = std::sqrt(p.q);
  const double off = std::sqrt(1.0 - p.q);
  const double ct = std::cos(p.theta);
  const double st = std::sin(p.theta);
  const double cp = std::cos(p.phi);
  const double sp = std::sin(p.phi);
  // e^{i(theta+phi)} as a product keeps the three phases mutually consistent.
  const double cs = ct * cp - st * sp;
  const double ss = st * cp + ct * sp;
  return CoinMatrix{
      Complex(diag, 0.0),
      Complex(off * ct, off * st),
      Complex(off * cp, off * sp),
      Complex(-diag * cs, -diag * ss),
  };
}

double unitarity_defect(const CoinMatrix& c) noexcept {
  // (C^dagger C)_{rs} = sum_k conj(C_kr) C_ks
  const Complex m00 = std::conj(c.uu) * c.uu + std::conj(c.du) * c.du;
  const Complex m01 = std::conj(c.uu) * c.ud + std::conj(c.du) * c.dd;
  const Complex m10 = std::conj(c.ud) * c.uu + std::conj(c.dd) * c.du;
  const Complex m11 = std::conj(c.ud) * c.ud + std::conj(c.dd) * c.dd;
  return std::max({std::abs(m00 - 1.0), std::abs(m01), std::abs(m10), std::abs(m11 - 1.0)});
}

Complex determinant(const CoinMatrix& c) noexcept { return c.uu * c.dd - c.ud * c.du; }

}  // namespace qwalk
