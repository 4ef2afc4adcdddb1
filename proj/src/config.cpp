#include "qwalk/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "label",  "regime",  "ensemble", "q_range",  "theta_range", "phi_range", "coin1",
    "coin2",  "p",       "coin",     "steps",    "ic",          "ic_delta",  "ic_count",
    "sigma",  "cutoff",  "spin",     "seed",     "thresholds",  "drop_first", "replicas",
    "out",
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    parts.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

[[noreturn]] void bad(std::string_view field, const std::string& why) {
  throw ValidationError(std::string(field) + ": " + why);
}

double plain_real(std::string_view text, std::string_view field) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) bad(field, "not a number: '" + std::string(text) + "'");
  return v;
}

double real_of(const json& v, std::string_view field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_real(v.get<std::string>(), field);
  bad(field, "expected a number, got " + v.dump());
}

std::int64_t integer_of(const json& v, std::string_view field) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    const std::string s(trim(v.get<std::string>()));
    std::int64_t n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return n;
  }
  bad(field, "expected an integer, got " + v.dump());
}

std::uint64_t seed_of(const json& v, std::string_view field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const std::string s(trim(v.get<std::string>()));
    std::uint64_t n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return n;
  }
  bad(field, "expected a non-negative 64-bit integer, got " + v.dump());
}

int int_of(const json& v, std::string_view field) {
  const std::int64_t n = integer_of(v, field);
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) bad(field, "out of range");
  return static_cast<int>(n);
}

std::string string_of(const json& v, std::string_view field) {
  if (!v.is_string()) bad(field, "expected a string, got " + v.dump());
  return std::string(trim(v.get<std::string>()));
}

std::vector<double> reals_of(const json& v, std::string_view field) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(real_of(x, field));
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    for (auto part : split_list(s)) {
      if (!part.empty()) out.push_back(parse_real(part, field));
    }
  } else {
    out.push_back(real_of(v, field));
  }
  return out;
}

Interval interval_of(const json& v, std::string_view field) {
  const auto xs = reals_of(v, field);
  if (xs.size() != 2) bad(field, "expected a range 'lo, hi'");
  return {xs[0], xs[1]};
}

CoinParams coin_of(const json& v, std::string_view field) {
  if (v.is_string()) {
    const std::string name = string_of(v, field);
    if (name == "hadamard" || name == "H") return kHadamard;
    if (name == "fourier" || name == "F" || name == "kempe") return kFourier;
  }
  if (v.is_object()) {
    return {real_of(v.at("q"), field), real_of(v.at("theta"), field), real_of(v.at("phi"), field)};
  }
  const auto xs = reals_of(v, field);
  if (xs.size() != 3) bad(field, "expected hadamard, fourier or 'q, theta, phi'");
  return {xs[0], xs[1], xs[2]};
}

SpinAngles spin_of(const json& v, std::string_view field) {
  if (v.is_string()) {
    const std::string name = string_of(v, field);
    if (name == "xi1") return kXi1;
    if (name == "xi2") return kXi2;
    if (name == "up") return {0.0, 0.0};
    if (name == "down") return {std::numbers::pi / 2, 0.0};
  }
  const auto xs = reals_of(v, field);
  if (xs.size() != 2) bad(field, "expected xi1, xi2, up, down or 'alpha, beta'");
  return {xs[0], xs[1]};
}

json parse_key_values(std::string_view text) {
  json obj = json::object();
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key(trim(view.substr(0, eq)));
    if (obj.contains(key)) bad(key, "given twice");
    obj[key] = std::string(trim(view.substr(eq + 1)));
  }
  return obj;
}

}  // namespace

std::string_view to_string(IcFamily f) noexcept {
  switch (f) {
    case IcFamily::kGridTwoSite:
      return "grid-two-site";
    case IcFamily::kGridLocalized:
      return "grid-localized";
    case IcFamily::kRandomTwoSite:
      return "random-two-site";
    case IcFamily::kRandomLocalized:
      return "random-localized";
    case IcFamily::kGaussian:
      return "gaussian";
    case IcFamily::kLocalized:
      return "localized";
  }
  return "unknown";
}

IcFamily parse_ic_family(std::string_view name) {
  for (IcFamily f : {IcFamily::kGridTwoSite, IcFamily::kGridLocalized, IcFamily::kRandomTwoSite,
                     IcFamily::kRandomLocalized, IcFamily::kGaussian, IcFamily::kLocalized}) {
    if (name == to_string(f)) return f;
  }
  bad("ic", "unknown family '" + std::string(name) +
                "' (expected grid-two-site|grid-localized|random-two-site|random-localized|gaussian|localized)");
}

double parse_real(std::string_view text, std::string_view field) {
  text = trim(text);
  const auto pi_at = text.find("pi");
  if (pi_at == std::string_view::npos) return plain_real(text, field);
  const std::string_view coefficient = trim(text.substr(0, pi_at));
  std::string_view rest = trim(text.substr(pi_at + 2));
  double value = std::numbers::pi;
  if (!coefficient.empty()) value *= plain_real(coefficient, field);
  if (!rest.empty()) {
    if (rest.front() != '/') bad(field, "cannot parse '" + std::string(text) + "'");
    value /= plain_real(trim(rest.substr(1)), field);
  }
  return value;
}

void validate(const ExperimentConfig& c) {
  if (c.steps < 1) bad("steps", "must be >= 1, got " + std::to_string(c.steps));
  validate(c.ensemble);
  switch (c.ic) {
    case IcFamily::kGridTwoSite:
    case IcFamily::kGridLocalized:
      if (!(c.ic_delta > 0.0)) bad("ic_delta", "must be > 0");
      break;
    case IcFamily::kRandomTwoSite:
    case IcFamily::kRandomLocalized:
      if (c.ic_count < 1) bad("ic_count", "must be >= 1 (empty initial-condition family)");
      break;
    case IcFamily::kGaussian:
      if (!(c.sigma > 0.0)) bad("sigma", "must be > 0");
      if (!(c.cutoff >= 3.0)) bad("cutoff", "must be >= 3");
      break;
    case IcFamily::kLocalized:
      break;
  }
  for (double t : c.thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) bad("thresholds", "values must lie in [0, 1]");
  }
  if (c.drop_first < 0) bad("drop_first", "must be >= 0");
  if (c.replicas < 1) bad("replicas", "must be >= 1");
  if (c.out_dir.empty()) bad("out", "must not be empty");
}

ExperimentConfig config_from_json(const json& input) {
  const json& j = input.contains("config") && input.at("config").is_object() ? input.at("config") : input;
  if (!j.is_object()) throw ValidationError("config: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.contains(key)) bad(key, "unknown configuration key");
  }
  ExperimentConfig c;
  if (j.contains("label")) c.label = string_of(j.at("label"), "label");
  if (!j.contains("regime")) bad("regime", "required");
  c.regime = parse_regime(string_of(j.at("regime"), "regime"));

  const std::string ensemble = j.contains("ensemble") ? string_of(j.at("ensemble"), "ensemble") : "continuous";
  if (ensemble == "continuous") {
    ContinuousSU2 cont = rqrw_inf();
    if (j.contains("q_range")) cont.q = interval_of(j.at("q_range"), "q_range");
    if (j.contains("theta_range")) cont.theta = interval_of(j.at("theta_range"), "theta_range");
    if (j.contains("phi_range")) cont.phi = interval_of(j.at("phi_range"), "phi_range");
    c.ensemble = cont;
  } else if (ensemble == "two-coin") {
    TwoCoin two = rqrw2();
    if (j.contains("coin1")) two.c1 = coin_of(j.at("coin1"), "coin1");
    if (j.contains("coin2")) two.c2 = coin_of(j.at("coin2"), "coin2");
    if (j.contains("p")) two.p = real_of(j.at("p"), "p");
    c.ensemble = two;
  } else if (ensemble == "fixed") {
    if (!j.contains("coin")) bad("coin", "required when ensemble = fixed");
    const CoinParams coin = coin_of(j.at("coin"), "coin");
    c.ensemble = TwoCoin{coin, coin, 1.0};
  } else {
    bad("ensemble", "unknown value '" + ensemble + "' (expected continuous|two-coin|fixed)");
  }

  if (j.contains("steps")) c.steps = int_of(j.at("steps"), "steps");
  if (!j.contains("ic")) bad("ic", "required (empty initial-condition family)");
  c.ic = parse_ic_family(string_of(j.at("ic"), "ic"));
  if (j.contains("ic_delta")) c.ic_delta = real_of(j.at("ic_delta"), "ic_delta");
  if (j.contains("ic_count")) c.ic_count = int_of(j.at("ic_count"), "ic_count");
  if (j.contains("sigma")) c.sigma = real_of(j.at("sigma"), "sigma");
  if (j.contains("cutoff")) c.cutoff = real_of(j.at("cutoff"), "cutoff");
  if (j.contains("spin")) {
    c.spin = spin_of(j.at("spin"), "spin");
  } else if (c.ic == IcFamily::kLocalized) {
    c.spin = {0.0, 0.0};
  }
  if (j.contains("seed")) c.seed = seed_of(j.at("seed"), "seed");
  if (j.contains("thresholds")) c.thresholds = reals_of(j.at("thresholds"), "thresholds");
  if (j.contains("drop_first")) c.drop_first = int_of(j.at("drop_first"), "drop_first");
  if (j.contains("replicas")) c.replicas = int_of(j.at("replicas"), "replicas");
  if (j.contains("out")) c.out_dir = string_of(j.at("out"), "out");
  validate(c);
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from_json(j);
  }
  return config_from_json(parse_key_values(text));
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["label"] = c.label;
  j["regime"] = std::string(to_string(c.regime));
  if (const auto* two = std::get_if<TwoCoin>(&c.ensemble)) {
    j["ensemble"] = "two-coin";
    j["coin1"] = {two->c1.q, two->c1.theta, two->c1.phi};
    j["coin2"] = {two->c2.q, two->c2.theta, two->c2.phi};
    j["p"] = two->p;
  } else {
    const auto& cont = std::get<ContinuousSU2>(c.ensemble);
    j["ensemble"] = "continuous";
    j["q_range"] = {cont.q.lo, cont.q.hi};
    j["theta_range"] = {cont.theta.lo, cont.theta.hi};
    j["phi_range"] = {cont.phi.lo, cont.phi.hi};
  }
  j["steps"] = c.steps;
  j["ic"] = std::string(to_string(c.ic));
  j["ic_delta"] = c.ic_delta;
  j["ic_count"] = c.ic_count;
  j["sigma"] = c.sigma;
  j["cutoff"] = c.cutoff;
  j["spin"] = {c.spin.alpha, c.spin.beta};
  j["seed"] = c.seed;
  j["thresholds"] = c.thresholds;
  j["drop_first"] = c.drop_first;
  j["replicas"] = c.replicas;
  j["out"] = c.out_dir;
  return j;
}

std::string display_label(const ExperimentConfig& c) {
  if (!c.label.empty()) return c.label;
  const char* tag = std::holds_alternative<TwoCoin>(c.ensemble) ? "two-coin" : "continuous";
  return std::string(to_string(c.regime)) + "-" + tag;
}

std::vector<InitialCondition> build_initial_conditions(const ExperimentConfig& c) {
  switch (c.ic) {
    case IcFamily::kGridTwoSite:
      return grid_two_site(c.ic_delta);
    case IcFamily::kGridLocalized:
      return grid_localized(c.ic_delta);
    case IcFamily::kRandomTwoSite:
      return random_ics(c.ic_count, c.seed, IcKind::kTwoSite);
    case IcFamily::kRandomLocalized:
      return random_ics(c.ic_count, c.seed, IcKind::kLocalized);
    case IcFamily::kGaussian:
      return {InitialCondition{c.spin, Gaussian{c.sigma, c.cutoff}}};
    case IcFamily::kLocalized:
      return {InitialCondition{c.spin, Localized{0}}};
  }
  return {};
}

EnsembleConfig to_ensemble_config(const ExperimentConfig& c, int threads) {
  validate(c);
  EnsembleConfig e;
  e.regime = c.regime;
  e.ensemble = c.ensemble;
  e.ics = build_initial_conditions(c);
  e.steps = c.steps;
  e.seed = c.seed;
  e.thresholds = c.thresholds;
  e.replicas = c.replicas;
  e.threads = threads;
  return e;
}

}  // namespace qwalk
