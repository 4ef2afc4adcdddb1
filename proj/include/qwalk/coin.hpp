#pragma once

#include <complex>
#include <numbers>

namespace qwalk {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The three real degrees of freedom of a coin, up to global phase.
// q in [0,1] sets the bias; theta and phi in [0, 2pi] set relative phases.
struct CoinParams {
  double q = 0.5;
  double theta = 0.0;
  double phi = 0.0;

  friend bool operator==(const CoinParams&, const CoinParams&) = default;
};

// 2x2 unitary acting on the spin; entries named row/column as up/down.
struct CoinMatrix {
  Complex uu;
  Complex ud;
  Complex du;
  Complex dd;

  friend bool operator==(const CoinMatrix&, const CoinMatrix&) = default;
};

inline constexpr CoinParams kHadamard{0.5, 0.0, 0.0};
inline constexpr CoinParams kFourier{0.5, std::numbers::pi / 2, std::numbers::pi / 2};

// Throws DomainError when q is outside [0,1] or an angle outside [0, 2pi].
void validate(const CoinParams& p);

// [[sqrt(q), sqrt(1-q) e^{i theta}], [sqrt(1-q) e^{i phi}, -sqrt(q) e^{i(theta+phi)}]]
CoinMatrix coin_matrix(const CoinParams& p);

// Same matrix without range checks; for hot paths whose inputs are in range
// by construction.
CoinMatrix coin_matrix_unchecked(const CoinParams& p) noexcept;

// Max-entry deviation of C^dagger C from the identity.
double unitarity_defect(const CoinMatrix& c) noexcept;

Complex determinant(const CoinMatrix& c) noexcept;

}  // namespace qwalk
