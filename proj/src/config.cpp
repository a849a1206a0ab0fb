#include "lorasim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "lorasim/errors.hpp"

namespace lorasim {

std::string to_string(Architecture a) {
  switch (a) {
    case Architecture::SubGHzOnly: return "subghz";
    case Architecture::TwoPointFourOnly: return "24ghz";
    case Architecture::Proposal: return "proposal";
  }
  return "?";
}

Architecture architecture_from_string(const std::string& s) {
  if (s == "subghz") return Architecture::SubGHzOnly;
  if (s == "24ghz") return Architecture::TwoPointFourOnly;
  if (s == "proposal") return Architecture::Proposal;
  throw ConfigError("unknown architecture '" + s + "' (expected subghz, 24ghz or proposal)");
}

void validate(const ExperimentConfig& c) {
  if (c.n_eds < 0) throw ConfigError("n_eds must be >= 0");
  if (c.n_relays < 0) throw ConfigError("n_relays must be >= 0");
  if (c.architecture == Architecture::Proposal && c.n_relays > band(BandId::ISM2G4).channel_count) {
    throw ConfigError("n_relays exceeds the 2.4 GHz channel budget of " +
                      std::to_string(band(BandId::ISM2G4).channel_count) +
                      " (one dedicated channel per cluster)");
  }
  if (c.area_side_m <= 0.0) throw ConfigError("area_side_m must be positive");
  if (c.building_side_m < 0.0) throw ConfigError("building_side_m must be >= 0");
  if (c.building_side_m > 0.0 && c.building_pitch_m < c.building_side_m) {
    throw ConfigError("building_pitch_m must be >= building_side_m");
  }
  if (c.sim_time_s <= 0.0) throw ConfigError("sim_time_s must be positive");
  if (c.payload_interval_s <= 0.0) throw ConfigError("payload_interval_s must be positive");
  if (c.payload_bytes <= 0) throw ConfigError("payload_bytes must be positive");
  if (c.coding_rate < 1 || c.coding_rate > 4) throw ConfigError("coding_rate must be 1..4");
  if (c.preamble_symbols < 1) throw ConfigError("preamble_symbols must be positive");
  if (c.run_count < 1) throw ConfigError("run_count must be >= 1");
  if (c.adr_margin_db < 0.0) throw ConfigError("adr_margin_db must be >= 0");
  if (c.rx_window_symbols < 0) throw ConfigError("rx_window_symbols must be >= 0");
  if (c.ed_tx_power_dbm > band(BandId::ISM2G4).max_tx_power_dbm &&
      c.architecture != Architecture::SubGHzOnly) {
    throw ConfigError("ed_tx_power_dbm above the 2.4 GHz band limit");
  }
  if (c.rl_tx_power_dbm > band(BandId::EU868).max_tx_power_dbm) {
    throw ConfigError("rl_tx_power_dbm above the EU868 band limit");
  }
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("trailing characters in number '" + v + "'");
  return d;
}

int parse_int(const std::string& v) {
  const double d = parse_double(v);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) throw ConfigError("expected an integer, got '" + v + "'");
  return i;
}

std::uint64_t parse_u64(const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("expected an unsigned integer, got '" + v + "'");
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Per-SF override keys look like gamma_sf7, sens_eu868_sf12, sens_24ghz_sf5.
bool apply_sf_override(ExperimentConfig& c, const std::string& key, const std::string& value) {
  const auto try_prefix = [&](const std::string& prefix, std::map<int, double>& table) {
    if (key.rfind(prefix, 0) != 0) return false;
    const int sf = parse_int(key.substr(prefix.size()));
    if (sf < kMinSf || sf > kMaxSf) throw ConfigError("SF out of range in key '" + key + "'");
    table[sf] = parse_double(value);
    return true;
  };
  return try_prefix("gamma_sf", c.gamma_overrides) ||
         try_prefix("sens_eu868_sf", c.sens_eu868_overrides) ||
         try_prefix("sens_24ghz_sf", c.sens_ism2g4_overrides);
}

void set_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
  static const std::map<std::string, std::function<void(ExperimentConfig&, const std::string&)>>
      setters = {
          {"architecture", [](auto& c, const auto& v) { c.architecture = architecture_from_string(v); }},
          {"n_eds", [](auto& c, const auto& v) { c.n_eds = parse_int(v); }},
          {"n_relays", [](auto& c, const auto& v) { c.n_relays = parse_int(v); }},
          {"area_side_m", [](auto& c, const auto& v) { c.area_side_m = parse_double(v); }},
          {"building_side_m", [](auto& c, const auto& v) { c.building_side_m = parse_double(v); }},
          {"building_pitch_m", [](auto& c, const auto& v) { c.building_pitch_m = parse_double(v); }},
          {"building_height_m", [](auto& c, const auto& v) { c.building_height_m = parse_double(v); }},
          {"sim_time_s", [](auto& c, const auto& v) { c.sim_time_s = parse_double(v); }},
          {"payload_interval_s", [](auto& c, const auto& v) { c.payload_interval_s = parse_double(v); }},
          {"payload_bytes", [](auto& c, const auto& v) { c.payload_bytes = parse_int(v); }},
          {"ed_tx_power_dbm", [](auto& c, const auto& v) { c.ed_tx_power_dbm = parse_double(v); }},
          {"rl_tx_power_dbm", [](auto& c, const auto& v) { c.rl_tx_power_dbm = parse_double(v); }},
          {"ed_antenna_gain_db", [](auto& c, const auto& v) { c.ed_antenna_gain_db = parse_double(v); }},
          {"rl_antenna_gain_db", [](auto& c, const auto& v) { c.rl_antenna_gain_db = parse_double(v); }},
          {"gw_antenna_gain_db", [](auto& c, const auto& v) { c.gw_antenna_gain_db = parse_double(v); }},
          {"gw_height_m", [](auto& c, const auto& v) { c.gw_height_m = parse_double(v); }},
          {"node_height_m", [](auto& c, const auto& v) { c.node_height_m = parse_double(v); }},
          {"adr_margin_db", [](auto& c, const auto& v) { c.adr_margin_db = parse_double(v); }},
          {"capture_gamma_db", [](auto& c, const auto& v) { c.capture_gamma_db = parse_double(v); }},
          {"o2i_loss_db", [](auto& c, const auto& v) { c.o2i_loss_db = parse_double(v); }},
          {"shadowing", [](auto& c, const auto& v) { c.shadowing = parse_bool(v); }},
          {"probabilistic_los", [](auto& c, const auto& v) { c.probabilistic_los = parse_bool(v); }},
          {"ed_duty_cycle", [](auto& c, const auto& v) { c.ed_duty_cycle = parse_bool(v); }},
          {"relay_self_traffic", [](auto& c, const auto& v) { c.relay_self_traffic = parse_bool(v); }},
          {"uncovered_transmit", [](auto& c, const auto& v) { c.uncovered_transmit = parse_bool(v); }},
          {"rx_window_symbols", [](auto& c, const auto& v) { c.rx_window_symbols = parse_int(v); }},
          {"coding_rate", [](auto& c, const auto& v) { c.coding_rate = parse_int(v); }},
          {"preamble_symbols", [](auto& c, const auto& v) { c.preamble_symbols = parse_int(v); }},
          {"bw_eu868_hz", [](auto& c, const auto& v) { c.bw_eu868_hz = parse_double(v); }},
          {"bw_24ghz_hz", [](auto& c, const auto& v) { c.bw_ism2g4_hz = parse_double(v); }},
          {"run_count", [](auto& c, const auto& v) { c.run_count = parse_int(v); }},
          {"base_seed", [](auto& c, const auto& v) { c.base_seed = parse_u64(v); }},
      };
  const auto it = setters.find(key);
  if (it != setters.end()) {
    it->second(c, value);
    return;
  }
  if (apply_sf_override(c, key, value)) return;
  throw ConfigError("unknown key '" + key + "'");
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key or value");
    }
    try {
      set_key(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

void apply_overrides(ExperimentConfig& config, const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + item + "' is not key=value");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    set_key(config, key, value);
  }
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig config;
  config.architecture = architecture_from_string(name);
  return config;
}

RadioTables make_radio_tables(const ExperimentConfig& config) {
  RadioTables tables{sx1272_profile(), sx1280_profile(),
                     CaptureTable::uniform(config.capture_gamma_db)};
  for (const auto& [sf, dbm] : config.sens_eu868_overrides) tables.eu868.sensitivity[sf] = dbm;
  for (const auto& [sf, dbm] : config.sens_ism2g4_overrides) tables.ism2g4.sensitivity[sf] = dbm;
  for (const auto& [sf, db] : config.gamma_overrides) tables.capture.gamma_db[sf] = db;
  return tables;
}

RadioParams make_radio_params(const ExperimentConfig& config, BandId band_id, int sf,
                              double tx_power_dbm) {
  RadioParams p;
  p.band = band_id;
  p.sf = sf;
  p.bandwidth_hz = band_id == BandId::EU868 ? config.bw_eu868_hz : config.bw_ism2g4_hz;
  p.coding_rate = config.coding_rate;
  p.tx_power_dbm = tx_power_dbm;
  p.preamble_symbols = config.preamble_symbols;
  p.explicit_header = true;
  p.crc_on = true;
  return p;
}

}  // namespace lorasim
