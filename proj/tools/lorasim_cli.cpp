// Command-line front end: runs replicated simulations over a sweep and
// writes one CSV row per (architecture, sweep point); the `figure`
// subcommand turns such a CSV into per-series plot data.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lorasim/errors.hpp"
#include "lorasim/experiment.hpp"

using namespace lorasim;

namespace {

std::vector<Architecture> parse_presets(const std::string& preset) {
  std::vector<Architecture> archs;
  std::stringstream ss(preset);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) archs.push_back(architecture_from_string(item));
  }
  if (archs.empty()) throw ConfigError("empty preset list");
  return archs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-band multi-hop LoRaWAN network simulator"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string preset_names;
  std::string sweep_text;
  std::string out_path = "results.csv";
  std::vector<std::string> overrides;
  int runs = -1;
  std::int64_t seed = -1;
  int workers = 1;

  app.add_option("--config", config_path, "Flat key = value configuration file");
  app.add_option("--preset", preset_names,
                 "Architecture preset: subghz, 24ghz or proposal (comma list allowed)");
  app.add_option("--sweep", sweep_text, "Sweep spec, e.g. R=1,2,5,8,16 or N=50,100,200,500");
  app.add_option("--runs", runs, "Replications per sweep point");
  app.add_option("--seed", seed, "Base seed");
  app.add_option("--workers", workers, "Worker threads for run dispatch (default 1)");
  app.add_option("--out", out_path, "Output CSV path");
  app.add_option("--set", overrides, "Config override key=value (repeatable)");

  auto* fig = app.add_subcommand("figure", "Extract plot-ready series from a results CSV");
  std::string fig_csv, fig_id, fig_out = "figures";
  fig->add_option("--csv", fig_csv, "Results CSV produced by a sweep run")->required();
  fig->add_option("--figure", fig_id, "Figure id: 3, 4, 5 or table3")->required();
  fig->add_option("--out", fig_out, "Output directory for series files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fig->parsed()) {
      emit_figure_data(fig_csv, fig_id, fig_out);
      std::cout << "wrote figure " << fig_id << " series to " << fig_out << "\n";
      return 0;
    }

    ExperimentConfig config;
    if (!config_path.empty()) config = parse_config_file(config_path);
    std::vector<Architecture> architectures{config.architecture};
    if (!preset_names.empty()) architectures = parse_presets(preset_names);
    apply_overrides(config, overrides);
    if (runs > 0) config.run_count = runs;
    if (seed >= 0) config.base_seed = static_cast<std::uint64_t>(seed);

    SweepSpec sweep;
    if (!sweep_text.empty()) sweep = SweepSpec::parse(sweep_text);

    const std::string csv = run_experiment_csv(config, sweep, architectures, workers);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << csv;
    std::cout << csv;
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
