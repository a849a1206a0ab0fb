#pragma once

#include <string>
#include <vector>

#include "lorasim/config.hpp"
#include "lorasim/metrics.hpp"

namespace lorasim {

/// One swept variable and the values it takes; an empty variable means a
/// single point at the base configuration.
struct SweepSpec {
  enum class Variable { None, N, R, AreaSide };
  Variable variable = Variable::None;
  std::vector<double> values;

  static SweepSpec parse(const std::string& text);  // e.g. "R=1,2,5,8,16"
};

/// Aggregated outcome of one (architecture, sweep point) cell.
struct PointResult {
  Architecture architecture;
  int n_eds = 0;
  int n_relays = 0;
  double area_side_m = 0.0;
  std::uint64_t base_seed = 0;

  Summary throughput_bps;
  Summary ed_energy_mj;
  Summary unserved_eds;
  Summary lost_noise;
  Summary lost_interference;
};

/// Runs `config.run_count` independent replications of one configuration,
/// optionally fanned out over `workers` threads. Results are merged in run
/// order, so the outcome is identical for any worker count.
PointResult run_point(const ExperimentConfig& config, int workers = 1);

/// All per-run metrics for one configuration (kept for tests that inspect
/// distributions rather than summaries).
std::vector<RunMetrics> run_replications(const ExperimentConfig& config, int workers = 1);

/// Applies a sweep value to a copy of the base configuration.
ExperimentConfig at_sweep_value(const ExperimentConfig& base, SweepSpec::Variable variable,
                                double value);

/// Executes the sweep for each architecture in `architectures` and returns
/// CSV text: a fixed header plus one row per (architecture, sweep point).
std::string run_experiment_csv(const ExperimentConfig& base, const SweepSpec& sweep,
                               const std::vector<Architecture>& architectures, int workers);

extern const char* kCsvHeader;
std::string csv_row(const PointResult& r);

/// Per-figure extraction: reads rows of a results CSV and writes one
/// two-column (x, y, ci) series file per (architecture, R) into `out_dir`.
/// `figure` is one of "3" (throughput vs N at 1 km), "4" (throughput vs N at
/// 5 km), "5" (throughput vs R at 5 km), "table3" (ED energy vs N).
/// Throws ConfigError listing missing sweep points.
void emit_figure_data(const std::string& csv_path, const std::string& figure,
                      const std::string& out_dir);

}  // namespace lorasim
