#include "qwalk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <exception>
#include <thread>

#include "qwalk/errors.hpp"
#include "qwalk/evolve.hpp"

namespace qwalk {

namespace {

constexpr std::uint64_t kIcDomain = 0x696e697469616c73ULL;  // "initials"
constexpr std::size_t kBlockSize = 256;

Complex spin_up(const SpinAngles& s) { return {std::cos(s.alpha), 0.0}; }
Complex spin_down(const SpinAngles& s) { return std::polar(std::sin(s.alpha), s.beta); }

struct Realization {
  std::vector<double> entropy;
  std::vector<double> distance;
  std::vector<double> dispersion;
  PositionDistribution distribution;
  double final_entropy = 0.0;
};

Realization run_one(const EnsembleConfig& config, const InitialCondition& ic, std::uint64_t realization) {
  Realization out;
  const auto n = static_cast<std::size_t>(config.steps);
  out.entropy.reserve(n);
  out.distance.reserve(n);
  out.dispersion.reserve(n);

  WalkerState state = prepare(ic, config.steps);
  const CoinField field(config.regime, config.ensemble, config.seed, realization);
  ReducedSpinState previous = reduce(state);
  out.final_entropy = entropy(previous);
  evolve_in_place(state, field, config.steps, [&](const WalkerState& s) {
    const StepSummary summary = summarize(s);
    out.entropy.push_back(entropy(summary.spin));
    out.distance.push_back(trace_distance(summary.spin, previous));
    out.dispersion.push_back(summary.dispersion);
    previous = summary.spin;
  });
  if (!out.entropy.empty()) out.final_entropy = out.entropy.back();
  out.distribution = position_distribution(state);
  return out;
}

void add_into(std::vector<double>& sum, const std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) sum[i] += x[i];
}

// Runs body(i) for i in [begin, end) on `threads` workers.
template <class Body>
void parallel_for(std::size_t begin, std::size_t end, int threads, Body&& body) {
  const std::size_t count = end - begin;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::exception_ptr failure;
  std::atomic_flag failed = ATOMIC_FLAG_INIT;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < end; i = next++) {
          try {
            body(i);
          } catch (...) {
            if (!failed.test_and_set()) failure = std::current_exception();
            next = end;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points = 0;
};

// Ordinary least squares of ln(series[t-1]) on ln(t) for t in [t_lo, t_hi].
LineFit fit_log_log(std::span<const double> series, int t_lo, int t_hi) {
  LineFit fit;
  fit.points = t_hi - t_lo + 1;
  double sx = 0.0;
  double sy = 0.0;
  for (int t = t_lo; t <= t_hi; ++t) {
    const double v = series[static_cast<std::size_t>(t - 1)];
    if (!(v > 0.0)) {
      throw DomainError("power-law fit needs positive values; value at t = " + std::to_string(t) +
                        " is " + std::to_string(v));
    }
    sx += std::log(static_cast<double>(t));
    sy += std::log(v);
  }
  const double mx = sx / fit.points;
  const double my = sy / fit.points;
  double sxx = 0.0;
  double sxy = 0.0;
  for (int t = t_lo; t <= t_hi; ++t) {
    const double dx = std::log(static_cast<double>(t)) - mx;
    const double dy = std::log(series[static_cast<std::size_t>(t - 1)]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (int t = t_lo; t <= t_hi; ++t) {
    const double r = std::log(series[static_cast<std::size_t>(t - 1)]) -
                     (fit.intercept + fit.slope * std::log(static_cast<double>(t)));
    ssr += r * r;
  }
  fit.slope_stderr = fit.points > 2 ? std::sqrt(ssr / (fit.points - 2) / sxx) : 0.0;
  return fit;
}

}  // namespace

std::pair<int, int> support(const InitialCondition& ic) {
  if (const auto* loc = std::get_if<Localized>(&ic.position)) return {loc->site, loc->site};
  if (std::holds_alternative<TwoSite>(ic.position)) return {-1, 1};
  const auto& g = std::get<Gaussian>(ic.position);
  const int r = static_cast<int>(std::ceil(g.cutoff_multiple * g.sigma));
  return {-r, r};
}

WalkerState prepare(const InitialCondition& ic, int steps) {
  const auto [first, last] = support(ic);
  WalkerState state = WalkerState::for_support(first, last, steps);
  const Complex up = spin_up(ic.spin);
  const Complex down = spin_down(ic.spin);
  if (const auto* loc = std::get_if<Localized>(&ic.position)) {
    state.set(loc->site, up, down);
  } else if (const auto* two = std::get_if<TwoSite>(&ic.position)) {
    const Complex left(std::cos(two->alpha), 0.0);
    const Complex right = std::polar(std::sin(two->alpha), two->beta);
    state.set(-1, up * left, down * left);
    state.set(1, up * right, down * right);
  } else {
    const auto& g = std::get<Gaussian>(ic.position);
    const SiteMap psi = gaussian_profile(g.sigma, g.cutoff_multiple);
    for (int j = psi.lo; j <= psi.hi(); ++j) state.set(j, up * psi.at(j), down * psi.at(j));
  }
  return state;
}

std::vector<double> grid_axis(double delta, double upper) {
  if (!(delta > 0.0)) throw ValidationError("grid delta must be positive, got " + std::to_string(delta));
  std::vector<double> axis;
  for (int k = 0; k * delta <= upper; ++k) axis.push_back(k * delta);
  return axis;
}

std::vector<InitialCondition> grid_two_site(double delta) {
  const auto alphas = grid_axis(delta, std::numbers::pi);
  const auto betas = grid_axis(delta, kTwoPi);
  std::vector<InitialCondition> ics;
  ics.reserve(alphas.size() * alphas.size() * betas.size() * betas.size());
  for (double as : alphas)
    for (double bs : betas)
      for (double ap : alphas)
        for (double bp : betas) ics.push_back({{as, bs}, TwoSite{ap, bp}});
  return ics;
}

std::vector<InitialCondition> grid_localized(double delta) {
  const auto alphas = grid_axis(delta, std::numbers::pi);
  const auto betas = grid_axis(delta, kTwoPi);
  std::vector<InitialCondition> ics;
  ics.reserve(alphas.size() * betas.size());
  for (double as : alphas)
    for (double bs : betas) ics.push_back({{as, bs}, Localized{0}});
  return ics;
}

std::vector<InitialCondition> random_ics(int count, std::uint64_t seed, IcKind kind) {
  if (count < 1) throw ValidationError("random initial-condition count must be >= 1, got " + std::to_string(count));
  std::vector<InitialCondition> ics;
  ics.reserve(static_cast<std::size_t>(count));
  const std::uint64_t stream = keyed::combine(keyed::combine(kIcDomain, seed), static_cast<std::uint64_t>(kind));
  for (int i = 0; i < count; ++i) {
    const std::uint64_t key = keyed::combine(stream, static_cast<std::uint64_t>(i));
    const SpinAngles spin{std::numbers::pi * keyed::uniform(key, 0), kTwoPi * keyed::uniform(key, 1)};
    if (kind == IcKind::kLocalized) {
      ics.push_back({spin, Localized{0}});
    } else {
      ics.push_back({spin, TwoSite{std::numbers::pi * keyed::uniform(key, 2), kTwoPi * keyed::uniform(key, 3)}});
    }
  }
  return ics;
}

SiteMap gaussian_profile(double sigma, double cutoff_multiple) {
  if (!(sigma > 0.0)) throw ValidationError("gaussian sigma must be positive, got " + std::to_string(sigma));
  if (!(cutoff_multiple >= 3.0)) {
    throw ValidationError("gaussian cutoff multiple must be >= 3, got " + std::to_string(cutoff_multiple));
  }
  const int r = static_cast<int>(std::ceil(cutoff_multiple * sigma));
  SiteMap psi{-r, std::vector<double>(static_cast<std::size_t>(2 * r + 1))};
  double norm = 0.0;
  for (int j = -r; j <= r; ++j) {
    const double v = std::exp(-static_cast<double>(j) * j / (4.0 * sigma * sigma));
    psi.values[static_cast<std::size_t>(j + r)] = v;
    norm += v * v;
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (double& v : psi.values) v *= scale;
  return psi;
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
  if (config.ics.empty()) throw ValidationError("ensemble needs at least one initial condition");
  if (config.steps < 0) throw ValidationError("steps must be >= 0, got " + std::to_string(config.steps));
  if (config.replicas < 1) throw ValidationError("replicas must be >= 1, got " + std::to_string(config.replicas));
  validate(config.ensemble);

  int lo = 0;
  int hi = 0;
  for (std::size_t i = 0; i < config.ics.size(); ++i) {
    const auto [first, last] = support(config.ics[i]);
    lo = i == 0 ? first : std::min(lo, first);
    hi = i == 0 ? last : std::max(hi, last);
  }
  lo -= config.steps;
  hi += config.steps;

  const auto n = static_cast<std::size_t>(config.steps);
  const std::size_t total = config.ics.size() * static_cast<std::size_t>(config.replicas);
  int threads = config.threads;
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  EnsembleResult result;
  result.mean_entropy.assign(n, 0.0);
  result.mean_distance.assign(n, 0.0);
  result.mean_dispersion.assign(n, 0.0);
  result.mean_distribution = SiteMap{lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0)};
  std::vector<std::size_t> above(config.thresholds.size(), 0);
  double final_sum = 0.0;

  std::vector<Realization> block(std::min(kBlockSize, total));
  for (std::size_t start = 0; start < total; start += kBlockSize) {
    const std::size_t stop = std::min(total, start + kBlockSize);
    parallel_for(start, stop, threads, [&](std::size_t id) {
      const auto& ic = config.ics[id / static_cast<std::size_t>(config.replicas)];
      block[id - start] = run_one(config, ic, id);
    });
    for (std::size_t id = start; id < stop; ++id) {
      const Realization& r = block[id - start];
      add_into(result.mean_entropy, r.entropy);
      add_into(result.mean_distance, r.distance);
      add_into(result.mean_dispersion, r.dispersion);
      for (int j = r.distribution.lo; j <= r.distribution.hi(); ++j) {
        result.mean_distribution.values[static_cast<std::size_t>(j - lo)] += r.distribution.at(j);
      }
      final_sum += r.final_entropy;
      for (std::size_t k = 0; k < config.thresholds.size(); ++k) {
        if (r.final_entropy >= config.thresholds[k]) ++above[k];
      }
    }
  }

  const double inv = 1.0 / static_cast<double>(total);
  for (auto* series : {&result.mean_entropy, &result.mean_distance, &result.mean_dispersion,
                       &result.mean_distribution.values}) {
    for (double& v : *series) v *= inv;
  }
  result.mean_final_entropy = final_sum * inv;
  result.count = total;
  for (std::size_t k = 0; k < config.thresholds.size(); ++k) {
    result.threshold_rates.push_back({config.thresholds[k], static_cast<double>(above[k]) * inv});
  }
  return result;
}

PowerLawFit fit_power_law(std::span<const double> series, int drop_first) {
  if (drop_first < 0) throw ValidationError("drop_first must be >= 0, got " + std::to_string(drop_first));
  const auto length = static_cast<int>(series.size());
  if (length <= drop_first + 2) {
    throw ValidationError("series of " + std::to_string(length) + " points is too short to fit after dropping " +
                          std::to_string(drop_first));
  }
  const LineFit line = fit_log_log(series, drop_first + 1, length);
  PowerLawFit fit;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.slope_stderr = line.slope_stderr;
  fit.ci95 = {line.slope - 1.96 * line.slope_stderr, line.slope + 1.96 * line.slope_stderr};
  fit.points_used = line.points;
  fit.points_dropped = drop_first;
  return fit;
}

double log_log_slope(std::span<const double> series, int t_lo, int t_hi) {
  if (t_lo < 1 || t_hi > static_cast<int>(series.size()) || t_hi - t_lo < 1) {
    throw ValidationError("log-log slope window [" + std::to_string(t_lo) + ", " + std::to_string(t_hi) +
                          "] invalid for a series of " + std::to_string(series.size()) + " points");
  }
  return fit_log_log(series, t_lo, t_hi).slope;
}

}  // namespace qwalk
