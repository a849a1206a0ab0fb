#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "lorasim/errors.hpp"
#include "lorasim/experiment.hpp"

using namespace lorasim;

namespace {
ExperimentConfig quick_config() {
  ExperimentConfig c;
  c.architecture = Architecture::Proposal;
  c.n_eds = 30;
  c.n_relays = 3;
  c.area_side_m = 2000.0;
  c.sim_time_s = 60.0;
  c.run_count = 6;
  return c;
}
}  // namespace

TEST_CASE("sweep spec parsing") {
  const SweepSpec spec = SweepSpec::parse("R=1,2,5,8,16");
  CHECK(spec.variable == SweepSpec::Variable::R);
  CHECK(spec.values == std::vector<double>{1, 2, 5, 8, 16});
  CHECK(SweepSpec::parse("N=50,100").variable == SweepSpec::Variable::N);
  CHECK(SweepSpec::parse("A_L=1000,5000").variable == SweepSpec::Variable::AreaSide);
  CHECK_THROWS_AS(SweepSpec::parse("X=1"), ConfigError);
  CHECK_THROWS_AS(SweepSpec::parse("R=5,2"), ConfigError);  // must increase
  CHECK_THROWS_AS(SweepSpec::parse("R="), ConfigError);
}

TEST_CASE("parallel dispatch reproduces the serial CSV byte for byte") {
  const ExperimentConfig base = quick_config();
  const SweepSpec sweep = SweepSpec::parse("R=1,3");
  const std::string serial =
      run_experiment_csv(base, sweep, {Architecture::Proposal}, 1);
  const std::string parallel =
      run_experiment_csv(base, sweep, {Architecture::Proposal}, 4);
  CHECK(serial == parallel);
  CHECK(serial.find("proposal,30,1,2000") != std::string::npos);
  CHECK(serial.find("proposal,30,3,2000") != std::string::npos);
}

TEST_CASE("same seed twice gives identical output, new seed differs") {
  ExperimentConfig base = quick_config();
  base.run_count = 4;
  const SweepSpec none;
  const std::string a = run_experiment_csv(base, none, {base.architecture}, 1);
  const std::string b = run_experiment_csv(base, none, {base.architecture}, 1);
  CHECK(a == b);
  base.base_seed = 999;
  const std::string c = run_experiment_csv(base, none, {base.architecture}, 1);
  CHECK(a != c);
}

TEST_CASE("config files parse with line-precise errors") {
  const std::string good = "/tmp/lorasim_test_good.cfg";
  {
    std::ofstream out(good);
    out << "# comment\n";
    out << "architecture = proposal\n";
    out << "n_eds = 123\n";
    out << "adr_margin_db = 7.5\n";
    out << "gamma_sf9 = 3\n";
    out << "shadowing = off\n";
  }
  const ExperimentConfig c = parse_config_file(good);
  CHECK(c.n_eds == 123);
  CHECK(c.adr_margin_db == 7.5);
  CHECK(c.gamma_overrides.at(9) == 3.0);
  CHECK_FALSE(c.shadowing);
  std::remove(good.c_str());

  const std::string bad = "/tmp/lorasim_test_bad.cfg";
  {
    std::ofstream out(bad);
    out << "n_eds = 10\n";
    out << "definitely_not_a_key = 1\n";
  }
  try {
    parse_config_file(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  std::remove(bad.c_str());
}

TEST_CASE("overrides and presets") {
  ExperimentConfig c = preset("subghz");
  CHECK(c.architecture == Architecture::SubGHzOnly);
  apply_overrides(c, {"n_eds=77", "sens_eu868_sf7=-120"});
  CHECK(c.n_eds == 77);
  const RadioTables tables = make_radio_tables(c);
  CHECK(sensitivity_dbm(tables.eu868, 7, 125e3) == -120.0);
  CHECK_THROWS_AS(apply_overrides(c, {"nonsense"}), ConfigError);
  CHECK_THROWS_AS(preset("5ghz"), ConfigError);
}

TEST_CASE("figure extraction requires matching sweep coverage") {
  const std::string csv_path = "/tmp/lorasim_test_results.csv";
  {
    std::ofstream out(csv_path);
    out << kCsvHeader << "\n";
    out << "proposal,50,5,5000,1,100,5,1000,20,0,1,2\n";
    out << "proposal,200,5,5000,1,150,5,1100,20,0,1,2\n";
    out << "subghz,50,0,5000,1,90,4,3000,30,0,1,2\n";
    out << "24ghz,50,0,5000,1,80,4,1500,25,0,1,2\n";
  }
  CHECK_NOTHROW(emit_figure_data(csv_path, "4", "/tmp/lorasim_test_fig4"));
  {
    std::ifstream series("/tmp/lorasim_test_fig4/proposal_R5.csv");
    REQUIRE(series.good());
    std::string header, row;
    std::getline(series, header);
    CHECK(header == "x,y,ci95");
    std::getline(series, row);
    CHECK(row == "50,100,5");
  }
  CHECK_THROWS_AS(emit_figure_data(csv_path, "3", "/tmp/lorasim_test_fig3"), ConfigError);
  CHECK_THROWS_AS(emit_figure_data(csv_path, "9", "/tmp/lorasim_test_fig9"), ConfigError);
  CHECK_NOTHROW(emit_figure_data(csv_path, "table3", "/tmp/lorasim_test_t3"));
}
