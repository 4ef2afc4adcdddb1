#include "qwalk/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError(dir.string(), "cannot create output directory");
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

// One row per time step t = 1..n with a column per series.
void write_series_table(const fs::path& path, const std::vector<std::string>& labels,
                        const std::vector<const std::vector<double>*>& series) {
  auto out = open_for_write(path);
  out << 't';
  for (const auto& label : labels) out << ',' << label;
  out << '\n';
  const std::size_t n = series.empty() ? 0 : series.front()->size();
  for (std::size_t k = 0; k < n; ++k) {
    out << k + 1;
    for (const auto* s : series) out << ',' << format_number((*s)[k]);
    out << '\n';
  }
  finish(out, path);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunOutput execute(const ExperimentConfig& config, int threads) {
  const EnsembleConfig ensemble = to_ensemble_config(config, threads);
  const auto start = std::chrono::steady_clock::now();
  RunOutput run{config, run_ensemble(ensemble), 0.0};
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

json meta_json(const RunOutput& run) {
  json thresholds = json::array();
  for (const auto& r : run.result.threshold_rates) thresholds.push_back({{"threshold", r.threshold}, {"fraction", r.fraction}});
  return json{
      {"config", to_json(run.config)},
      {"seed", run.config.seed},
      {"realizations", run.result.count},
      {"mean_final_entropy", run.result.mean_final_entropy},
      {"threshold_rates", thresholds},
      {"wall_time_seconds", run.wall_seconds},
      {"version", kVersion},
  };
}

void write_run(const fs::path& dir, const RunOutput& run) {
  ensure_dir(dir);
  const EnsembleResult& r = run.result;

  write_series_table(dir / "timeseries.csv", {"mean_entropy", "mean_distance", "mean_dispersion"},
                     {&r.mean_entropy, &r.mean_distance, &r.mean_dispersion});

  const fs::path dist_path = dir / "distribution.csv";
  auto dist = open_for_write(dist_path);
  dist << "j,mean_probability\n";
  // Sites the walk cannot reach (wrong parity) are exactly zero and omitted.
  for (int j = r.mean_distribution.lo; j <= r.mean_distribution.hi(); ++j) {
    const double p = r.mean_distribution.at(j);
    if (p != 0.0) dist << j << ',' << format_number(p) << '\n';
  }
  finish(dist, dist_path);

  const fs::path thr_path = dir / "thresholds.csv";
  auto thr = open_for_write(thr_path);
  thr << "threshold,fraction\n";
  for (const auto& rate : r.threshold_rates) thr << format_number(rate.threshold) << ',' << format_number(rate.fraction) << '\n';
  finish(thr, thr_path);

  write_json(dir / "meta.json", meta_json(run));
}

std::vector<double> Timeseries::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ValidationError("timeseries: missing column '" + name + "'");
  const auto index = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[index]);
  return out;
}

Timeseries read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open timeseries file");
  Timeseries ts;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("timeseries: empty file " + path.string());
  ts.columns = split_csv_line(line);
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != ts.columns.size()) {
      throw ValidationError("timeseries: line " + std::to_string(number) + " has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(ts.columns.size()));
    }
    std::vector<double> row;
    for (const auto& cell : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ValidationError("timeseries: line " + std::to_string(number) + ": not a number '" + cell + "'");
      }
    }
    ts.rows.push_back(std::move(row));
  }
  return ts;
}

json fit_json(const PowerLawFit& fit) {
  return json{
      {"slope", fit.slope},
      {"intercept", fit.intercept},
      {"slope_stderr", fit.slope_stderr},
      {"ci95", {fit.ci95.first, fit.ci95.second}},
      {"points_used", fit.points_used},
      {"points_dropped", fit.points_dropped},
  };
}

PowerLawFit fit_timeseries(const fs::path& timeseries, int drop_first, const fs::path& dir) {
  const Timeseries ts = read_csv(timeseries);
  const std::vector<double> distance = ts.column("mean_distance");
  const PowerLawFit fit = fit_power_law(distance, drop_first);
  ensure_dir(dir);
  write_json(dir / "fit.json", fit_json(fit));
  return fit;
}

json compare(const std::vector<ExperimentConfig>& configs, int threads, const fs::path& dir) {
  if (configs.size() < 2) throw ValidationError("compare: needs at least two configs, got " + std::to_string(configs.size()));
  for (const auto& c : configs) {
    if (c.steps != configs.front().steps) {
      throw ValidationError("steps: compare needs a shared step count, got " + std::to_string(configs.front().steps) +
                            " and " + std::to_string(c.steps));
    }
  }
  std::vector<std::string> labels;
  std::set<std::string> used;
  for (const auto& c : configs) {
    std::string label = display_label(c);
    for (int k = 2; used.contains(label); ++k) label = display_label(c) + "-" + std::to_string(k);
    used.insert(label);
    labels.push_back(label);
  }

  ensure_dir(dir);
  std::vector<RunOutput> runs;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    runs.push_back(execute(configs[i], threads));
    write_run(dir / labels[i], runs.back());
  }

  auto pick = [&](auto member) {
    std::vector<const std::vector<double>*> out;
    for (const auto& run : runs) out.push_back(&(run.result.*member));
    return out;
  };
  write_series_table(dir / "entropy.csv", labels, pick(&EnsembleResult::mean_entropy));
  write_series_table(dir / "distance.csv", labels, pick(&EnsembleResult::mean_distance));
  write_series_table(dir / "dispersion.csv", labels, pick(&EnsembleResult::mean_dispersion));

  int lo = runs.front().result.mean_distribution.lo;
  int hi = runs.front().result.mean_distribution.hi();
  for (const auto& run : runs) {
    lo = std::min(lo, run.result.mean_distribution.lo);
    hi = std::max(hi, run.result.mean_distribution.hi());
  }
  const fs::path dist_path = dir / "distribution.csv";
  auto dist = open_for_write(dist_path);
  dist << 'j';
  for (const auto& label : labels) dist << ',' << label;
  dist << '\n';
  for (int j = lo; j <= hi; ++j) {
    dist << j;
    for (const auto& run : runs) dist << ',' << format_number(run.result.mean_distribution.at(j));
    dist << '\n';
  }
  finish(dist, dist_path);

  std::vector<std::size_t> order(runs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return runs[x].result.mean_final_entropy > runs[y].result.mean_final_entropy;
  });
  json ranking = json::array();
  for (std::size_t i : order) {
    json entry{
        {"label", labels[i]},
        {"regime", std::string(to_string(configs[i].regime))},
        {"final_mean_entropy", runs[i].result.mean_final_entropy},
        {"realizations", runs[i].result.count},
    };
    if (!runs[i].result.mean_distance.empty()) {
      const auto& d = runs[i].result.mean_distance;
      if (static_cast<int>(d.size()) > configs[i].drop_first + 2 &&
          std::all_of(d.begin() + configs[i].drop_first, d.end(), [](double v) { return v > 0.0; })) {
        entry["distance_fit"] = fit_json(fit_power_law(d, configs[i].drop_first));
      }
    }
    ranking.push_back(entry);
  }
  json summary{{"steps", configs.front().steps}, {"version", kVersion}, {"final_mean_entropy", ranking}};
  write_json(dir / "summary.json", summary);
  return summary;
}

}  // namespace qwalk
