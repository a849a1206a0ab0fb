#include "lorasim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "lorasim/engine.hpp"
#include "lorasim/errors.hpp"
#include "lorasim/scenario.hpp"

namespace lorasim {

SweepSpec SweepSpec::parse(const std::string& text) {
  SweepSpec spec;
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("sweep must look like VAR=v1,v2,...");
  const std::string var = text.substr(0, eq);
  if (var == "N") {
    spec.variable = Variable::N;
  } else if (var == "R") {
    spec.variable = Variable::R;
  } else if (var == "A_L") {
    spec.variable = Variable::AreaSide;
  } else {
    throw ConfigError("unknown sweep variable '" + var + "' (expected N, R or A_L)");
  }
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      spec.values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad sweep value '" + item + "'");
    }
  }
  if (spec.values.empty()) throw ConfigError("sweep has no values");
  for (std::size_t k = 1; k < spec.values.size(); ++k) {
    if (spec.values[k] <= spec.values[k - 1]) {
      throw ConfigError("sweep values must be strictly increasing");
    }
  }
  return spec;
}

ExperimentConfig at_sweep_value(const ExperimentConfig& base, SweepSpec::Variable variable,
                                double value) {
  ExperimentConfig config = base;
  switch (variable) {
    case SweepSpec::Variable::N: config.n_eds = static_cast<int>(value); break;
    case SweepSpec::Variable::R: config.n_relays = static_cast<int>(value); break;
    case SweepSpec::Variable::AreaSide: config.area_side_m = value; break;
    case SweepSpec::Variable::None: break;
  }
  return config;
}

std::vector<RunMetrics> run_replications(const ExperimentConfig& config, int workers) {
  validate(config);
  const int runs = config.run_count;
  std::vector<RunMetrics> results(runs);
  if (workers <= 1) {
    for (int r = 0; r < runs; ++r) {
      results[r] = simulate(generate_scenario(config, r));
    }
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int n_threads = std::min(workers, runs);
  pool.reserve(n_threads);
  for (int w = 0; w < n_threads; ++w) {
    pool.emplace_back([&]() {
      for (int r = next.fetch_add(1); r < runs; r = next.fetch_add(1)) {
        results[r] = simulate(generate_scenario(config, r));
      }
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

PointResult run_point(const ExperimentConfig& config, int workers) {
  const std::vector<RunMetrics> runs = run_replications(config, workers);

  std::vector<double> s, energy, unserved, noise, interference;
  s.reserve(runs.size());
  for (const RunMetrics& m : runs) {
    s.push_back(m.throughput_bps());
    energy.push_back(m.ed_energy_mean_mj());
    unserved.push_back(static_cast<double>(m.unserved_eds));
    noise.push_back(static_cast<double>(m.gw_uplinks.lost_noise));
    interference.push_back(static_cast<double>(m.gw_uplinks.lost_interference));
  }

  PointResult r;
  r.architecture = config.architecture;
  r.n_eds = config.n_eds;
  r.n_relays = config.n_relays;
  r.area_side_m = config.area_side_m;
  r.base_seed = config.base_seed;
  r.throughput_bps = summarize(s);
  r.ed_energy_mj = summarize(energy);
  r.unserved_eds = summarize(unserved);
  r.lost_noise = summarize(noise);
  r.lost_interference = summarize(interference);
  return r;
}

const char* kCsvHeader =
    "architecture,N,R,A_L,seed_base,S_mean,S_ci95,ed_energy_mean_mJ,ed_energy_ci95,"
    "unserved_ed_mean,frames_lost_noise,frames_lost_interference";

namespace {
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}
}  // namespace

std::string csv_row(const PointResult& r) {
  std::string row = to_string(r.architecture);
  row += ',' + std::to_string(r.n_eds);
  row += ',' + std::to_string(r.n_relays);
  row += ',' + fmt(r.area_side_m);
  row += ',' + std::to_string(r.base_seed);
  row += ',' + fmt(r.throughput_bps.mean);
  row += ',' + fmt(r.throughput_bps.ci95);
  row += ',' + fmt(r.ed_energy_mj.mean);
  row += ',' + fmt(r.ed_energy_mj.ci95);
  row += ',' + fmt(r.unserved_eds.mean);
  row += ',' + fmt(r.lost_noise.mean);
  row += ',' + fmt(r.lost_interference.mean);
  return row;
}

std::string run_experiment_csv(const ExperimentConfig& base, const SweepSpec& sweep,
                               const std::vector<Architecture>& architectures, int workers) {
  std::string csv = std::string(kCsvHeader) + '\n';
  const std::vector<double> values =
      sweep.variable == SweepSpec::Variable::None ? std::vector<double>{0.0} : sweep.values;
  for (Architecture arch : architectures) {
    for (double value : values) {
      ExperimentConfig config = at_sweep_value(base, sweep.variable, value);
      config.architecture = arch;
      csv += csv_row(run_point(config, workers)) + '\n';
    }
  }
  return csv;
}

namespace {

struct CsvRow {
  std::string architecture;
  int n = 0;
  int r = 0;
  double area = 0.0;
  double s_mean = 0.0, s_ci = 0.0;
  double e_mean = 0.0, e_ci = 0.0;
};

std::vector<CsvRow> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV '" + path + "'");
  std::vector<CsvRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 12) throw ConfigError("malformed CSV row: " + line);
    CsvRow row;
    row.architecture = fields[0];
    row.n = std::stoi(fields[1]);
    row.r = std::stoi(fields[2]);
    row.area = std::stod(fields[3]);
    row.s_mean = std::stod(fields[5]);
    row.s_ci = std::stod(fields[6]);
    row.e_mean = std::stod(fields[7]);
    row.e_ci = std::stod(fields[8]);
    rows.push_back(row);
  }
  return rows;
}

void write_series(const std::string& out_dir, const std::string& name,
                  const std::vector<std::array<double, 3>>& points) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir + "/" + name + ".csv");
  out << "x,y,ci95\n";
  for (const auto& p : points) {
    out << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]) << '\n';
  }
}

}  // namespace

void emit_figure_data(const std::string& csv_path, const std::string& figure,
                      const std::string& out_dir) {
  const std::vector<CsvRow> rows = read_rows(csv_path);
  std::vector<std::string> missing;

  const auto series_over_n = [&](double area, bool energy) {
    // One series per architecture; the relayed architecture additionally
    // keyed by R. x = N.
    std::map<std::string, std::vector<std::array<double, 3>>> series;
    for (const CsvRow& row : rows) {
      if (row.area != area) continue;
      std::string name = row.architecture;
      if (row.architecture == "proposal") name += "_R" + std::to_string(row.r);
      const double y = energy ? row.e_mean : row.s_mean;
      const double ci = energy ? row.e_ci : row.s_ci;
      series[name].push_back({static_cast<double>(row.n), y, ci});
    }
    if (series.empty()) {
      missing.push_back("no rows at A_L=" + fmt(area));
      return;
    }
    for (auto& [name, points] : series) {
      std::sort(points.begin(), points.end());
      write_series(out_dir, name, points);
    }
  };

  if (figure == "3") {
    series_over_n(1000.0, false);
  } else if (figure == "4") {
    series_over_n(5000.0, false);
  } else if (figure == "5") {
    // x = R for the relayed architecture, one series per N.
    std::map<int, std::vector<std::array<double, 3>>> series;
    for (const CsvRow& row : rows) {
      if (row.architecture != "proposal" || row.area != 5000.0) continue;
      series[row.n].push_back({static_cast<double>(row.r), row.s_mean, row.s_ci});
    }
    if (series.empty()) {
      missing.push_back("no proposal rows at A_L=5000");
    }
    for (auto& [n, points] : series) {
      std::sort(points.begin(), points.end());
      write_series(out_dir, "proposal_N" + std::to_string(n), points);
    }
  } else if (figure == "table3") {
    std::map<std::string, std::vector<std::array<double, 3>>> series;
    for (const CsvRow& row : rows) {
      if (row.area != 5000.0) continue;
      series[row.architecture].push_back({static_cast<double>(row.n), row.e_mean, row.e_ci});
    }
    for (const char* arch : {"subghz", "24ghz", "proposal"}) {
      if (!series.contains(arch)) missing.push_back(std::string("energy rows for ") + arch);
    }
    for (auto& [name, points] : series) {
      std::sort(points.begin(), points.end());
      write_series(out_dir, std::string("energy_") + name, points);
    }
  } else {
    throw ConfigError("unknown figure '" + figure + "' (expected 3, 4, 5 or table3)");
  }

  if (!missing.empty()) {
    std::string msg = "figure " + figure + " is missing sweep coverage:";
    for (const std::string& m : missing) msg += "\n  - " + m;
    throw ConfigError(msg);
  }
}

}  // namespace lorasim
