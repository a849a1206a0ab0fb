#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lorasim/phy.hpp"

namespace lorasim {

enum class Architecture { SubGHzOnly, TwoPointFourOnly, Proposal };

std::string to_string(Architecture a);
Architecture architecture_from_string(const std::string& s);

/// Full description of one experiment point. Defaults follow the reference
/// deployment: 12.5 dBm end devices, 16 dBm relays, 0 dB gains, BW 125 kHz
/// at EU868 and 203 kHz at 2.4 GHz, CR 4/5, 10 B payloads every second over
/// a 300 s horizon.
struct ExperimentConfig {
  Architecture architecture = Architecture::Proposal;
  int n_eds = 500;
  int n_relays = 5;
  double area_side_m = 5000.0;

  double building_side_m = 50.0;
  double building_pitch_m = 100.0;
  double building_height_m = 20.0;

  double sim_time_s = 300.0;
  double payload_interval_s = 1.0;
  int payload_bytes = 10;

  double ed_tx_power_dbm = 12.5;
  double rl_tx_power_dbm = 16.0;
  double ed_antenna_gain_db = 0.0;
  double rl_antenna_gain_db = 0.0;
  double gw_antenna_gain_db = 0.0;

  double gw_height_m = 25.0;
  double node_height_m = 1.5;

  double adr_margin_db = 10.0;
  double capture_gamma_db = 6.0;
  double o2i_loss_db = 20.0;
  bool shadowing = true;
  bool probabilistic_los = false;

  // End devices transmit each payload as soon as their radio is free; the
  // EU868 duty-cycle governor is applied to them only when this flag is set.
  // Relays forwarding on EU868 are always governed.
  bool ed_duty_cycle = false;
  bool relay_self_traffic = true;
  // Devices without coverage at any SF still transmit at the band's maximum
  // SF (they have no way to learn the link is dead in unconfirmed mode).
  bool uncovered_transmit = true;

  int rx_window_symbols = 5;

  int coding_rate = 1;
  int preamble_symbols = 8;
  double bw_eu868_hz = 125e3;
  double bw_ism2g4_hz = 203e3;

  int run_count = 200;
  std::uint64_t base_seed = 1;

  // Optional per-SF overrides of the built-in tables.
  std::map<int, double> gamma_overrides;                 // SF -> dB
  std::map<int, double> sens_eu868_overrides;            // SF -> dBm
  std::map<int, double> sens_ism2g4_overrides;           // SF -> dBm
};

/// Throws ConfigError on an inconsistent configuration (relay count above
/// the 2.4 GHz channel budget under Proposal, pitch below building side,
/// non-positive timing or payload values, ...).
void validate(const ExperimentConfig& config);

/// Parse a flat `key = value` file ('#' comments, blank lines allowed).
/// Unknown keys and malformed values raise ConfigError with the line number.
ExperimentConfig parse_config_file(const std::string& path);

/// Apply `key=value` override strings on top of an existing config.
void apply_overrides(ExperimentConfig& config, const std::vector<std::string>& overrides);

/// Named presets selecting a benchmark or the relayed architecture.
ExperimentConfig preset(const std::string& name);

/// Materialized radio tables for one experiment: datasheet profiles plus any
/// configured overrides.
struct RadioTables {
  RadioProfile eu868;
  RadioProfile ism2g4;
  CaptureTable capture;

  const RadioProfile& profile(BandId b) const {
    return b == BandId::EU868 ? eu868 : ism2g4;
  }
};

RadioTables make_radio_tables(const ExperimentConfig& config);

/// PHY parameters for an uplink on `band` at `sf` under this config.
RadioParams make_radio_params(const ExperimentConfig& config, BandId band, int sf,
                              double tx_power_dbm);

}  // namespace lorasim
