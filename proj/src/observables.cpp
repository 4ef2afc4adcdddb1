#include "qwalk/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kClampTolerance = 1e-12;

double variance_to_dispersion(double variance) noexcept {
  return variance > 0.0 ? std::sqrt(variance) : 0.0;
}

}  // namespace

double SiteMap::total() const noexcept {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

ReducedSpinState reduce(const WalkerState& state) noexcept {
  ReducedSpinState r{0.0, {}};
  const auto up = state.up();
  const auto down = state.down();
  double gre = 0.0;
  double gim = 0.0;
  for (std::size_t i = 0; i < up.size(); ++i) {
    r.alpha += std::norm(up[i]);
    // a * conj(b)
    gre += up[i].real() * down[i].real() + up[i].imag() * down[i].imag();
    gim += up[i].imag() * down[i].real() - up[i].real() * down[i].imag();
  }
  r.gamma = Complex(gre, gim);
  return r;
}

std::pair<double, double> eigenvalues(const ReducedSpinState& r) {
  // 1/4 - alpha(1-alpha) + |gamma|^2 == (alpha - 1/2)^2 + |gamma|^2 >= 0
  const double half_gap = std::sqrt((r.alpha - 0.5) * (r.alpha - 0.5) + std::norm(r.gamma));
  double minus = 0.5 - half_gap;
  if (minus < 0.0) {
    if (minus < -kClampTolerance) {
      throw DomainError("reduced spin state not positive: lambda_minus = " + std::to_string(minus) +
                        " (alpha = " + std::to_string(r.alpha) +
                        ", |gamma|^2 = " + std::to_string(std::norm(r.gamma)) + ")");
    }
    minus = 0.0;
  }
  return {1.0 - minus, minus};
}

double binary_entropy(double lambda_plus, double lambda_minus) noexcept {
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return std::clamp(term(lambda_plus) + term(lambda_minus), 0.0, 1.0);
}

double entropy(const ReducedSpinState& r) {
  const auto [plus, minus] = eigenvalues(r);
  return binary_entropy(plus, minus);
}

double trace_distance(const ReducedSpinState& r1, const ReducedSpinState& r2) noexcept {
  const double da = r1.alpha - r2.alpha;
  const Complex dg = r1.gamma - r2.gamma;
  return std::sqrt(da * da + std::norm(dg));
}

PositionDistribution position_distribution(const WalkerState& state) {
  PositionDistribution dist{state.lo(), std::vector<double>(state.size())};
  const auto up = state.up();
  const auto down = state.down();
  for (std::size_t i = 0; i < up.size(); ++i) dist.values[i] = std::norm(up[i]) + std::norm(down[i]);
  return dist;
}

double dispersion(const PositionDistribution& dist) noexcept {
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < dist.values.size(); ++i) {
    const double j = dist.lo + static_cast<double>(i);
    mean += j * dist.values[i];
    second += j * j * dist.values[i];
  }
  return variance_to_dispersion(second - mean * mean);
}

ClassicalBaseline classical_baseline(int n) {
  if (n < 0) throw ValidationError("classical baseline: negative step count " + std::to_string(n));
  // Row-by-row halving of Pascal's triangle; exact while values fit in 53 bits.
  std::vector<double> row(static_cast<std::size_t>(2 * n + 1), 0.0);
  std::vector<double> next(row.size(), 0.0);
  row[static_cast<std::size_t>(n)] = 1.0;
  for (int t = 0; t < n; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 0.0) continue;
      next[i - 1] += 0.5 * row[i];
      next[i + 1] += 0.5 * row[i];
    }
    row.swap(next);
  }
  return ClassicalBaseline{n, PositionDistribution{-n, std::move(row)}, std::sqrt(static_cast<double>(n))};
}

StepSummary summarize(const WalkerState& state) noexcept {
  StepSummary out;
  if (state.empty()) return out;
  double alpha = 0.0;
  double gre = 0.0;
  double gim = 0.0;
  double mean = 0.0;
  double second = 0.0;
  const auto up = state.up();
  const auto down = state.down();
  for (int j = state.first(); j <= state.last(); ++j) {
    const auto i = static_cast<std::size_t>(j - state.lo());
    const Complex a = up[i];
    const Complex b = down[i];
    const double pa = std::norm(a);
    const double p = pa + std::norm(b);
    alpha += pa;
    gre += a.real() * b.real() + a.imag() * b.imag();
    gim += a.imag() * b.real() - a.real() * b.imag();
    mean += j * p;
    second += static_cast<double>(j) * j * p;
  }
  out.spin = ReducedSpinState{alpha, Complex(gre, gim)};
  out.dispersion = variance_to_dispersion(second - mean * mean);
  return out;
}

}  // namespace qwalk
