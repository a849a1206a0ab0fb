#include "lorasim/phy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lorasim/errors.hpp"

namespace lorasim {

const BandInfo& band(BandId id) {
  // EU868: three default channels, 1% duty cycle on the default sub-band.
  // 2.4 GHz ISM: sixteen channels, no duty cycle restriction.
  static const BandInfo eu868{BandId::EU868, 0.868, 3, 0.01, 16.0, 7, 12, 125e3};
  static const BandInfo ism2g4{BandId::ISM2G4, 2.4, 16, std::nullopt, 12.5, 5, 12, 203e3};
  return id == BandId::EU868 ? eu868 : ism2g4;
}

bool sf_valid(BandId id, int sf) {
  const BandInfo& b = band(id);
  return sf >= b.min_sf && sf <= b.max_sf;
}

double symbol_duration_s(const RadioParams& params) {
  return static_cast<double>(1u << params.sf) / params.bandwidth_hz;
}

bool low_data_rate_optimize(const RadioParams& params) {
  return symbol_duration_s(params) > 16e-3;
}

int max_payload_bytes(int sf) {
  switch (sf) {
    case 5:
    case 6:
    case 7:
    case 8:
      return 222;
    case 9:
      return 115;
    case 10:
    case 11:
    case 12:
      return 51;
    default:
      throw std::invalid_argument("max_payload_bytes: SF out of range: " + std::to_string(sf));
  }
}

double time_on_air_s(const RadioParams& params, int payload_bytes) {
  if (payload_bytes <= 0) {
    throw std::invalid_argument("time_on_air_s: payload must be non-empty");
  }
  if (payload_bytes > max_payload_bytes(params.sf)) {
    throw std::invalid_argument("time_on_air_s: payload of " + std::to_string(payload_bytes) +
                                " B exceeds the SF" + std::to_string(params.sf) + " cap of " +
                                std::to_string(max_payload_bytes(params.sf)) + " B");
  }
  const double t_sym = symbol_duration_s(params);
  const int de = low_data_rate_optimize(params) ? 1 : 0;
  const int ih = params.explicit_header ? 0 : 1;
  const int crc = params.crc_on ? 1 : 0;
  const int num = 8 * payload_bytes - 4 * params.sf + 28 + 16 * crc - 20 * ih;
  const int den = 4 * (params.sf - 2 * de);
  const int blocks = num <= 0 ? 0 : (num + den - 1) / den;
  const int payload_symbols = 8 + blocks * (params.coding_rate + 4);
  return (params.preamble_symbols + 4.25 + payload_symbols) * t_sym;
}

double sensitivity_dbm(const RadioProfile& profile, int sf, double bandwidth_hz) {
  if (sf < kMinSf || sf > kMaxSf || !profile.sensitivity[sf].has_value() ||
      bandwidth_hz != profile.table_bandwidth_hz) {
    throw ConfigError("no sensitivity entry for SF" + std::to_string(sf) + " at " +
                      std::to_string(bandwidth_hz / 1e3) + " kHz");
  }
  return *profile.sensitivity[sf];
}

double tx_current_ma(const RadioProfile& profile, double tx_power_dbm) {
  for (const auto& [dbm, ma] : profile.tx_current) {
    if (tx_power_dbm <= dbm) return ma;
  }
  return profile.tx_current.back().second;
}

RadioProfile sx1272_profile() {
  RadioProfile p;
  p.band = BandId::EU868;
  p.supply_voltage_v = 3.3;
  p.rx_current_ma = 10.5;      // SX1272 datasheet table 1, RX LoRa, LnaBoost off
  p.sleep_current_ma = 1e-4;   // 0.1 uA sleep mode
  p.table_bandwidth_hz = 125e3;
  // SX1272 datasheet table 4, LoRa sensitivity at BW 125 kHz.
  p.sensitivity[7] = -124.0;
  p.sensitivity[8] = -127.0;
  p.sensitivity[9] = -130.0;
  p.sensitivity[10] = -133.0;
  p.sensitivity[11] = -135.0;
  p.sensitivity[12] = -137.0;
  // SX1272 datasheet table 1, supply current in transmit mode.
  p.tx_current = {{7.0, 18.0}, {13.0, 28.0}, {17.0, 90.0}, {20.0, 125.0}};
  return p;
}

RadioProfile sx1280_profile() {
  RadioProfile p;
  p.band = BandId::ISM2G4;
  p.supply_voltage_v = 3.3;
  p.rx_current_ma = 5.5;       // SX1280 datasheet, RX mode LoRa
  p.sleep_current_ma = 2e-4;   // 0.2 uA sleep mode
  p.table_bandwidth_hz = 203e3;
  // SX1280 datasheet, LoRa sensitivity at BW 203 kHz.
  p.sensitivity[5] = -109.0;
  p.sensitivity[6] = -112.0;
  p.sensitivity[7] = -115.0;
  p.sensitivity[8] = -118.0;
  p.sensitivity[9] = -121.0;
  p.sensitivity[10] = -124.0;
  p.sensitivity[11] = -127.0;
  p.sensitivity[12] = -130.0;
  // SX1280 datasheet, supply current in transmit mode.
  p.tx_current = {{10.0, 18.0}, {12.5, 24.0}};
  return p;
}

CaptureTable CaptureTable::uniform(double gamma_db) {
  CaptureTable t;
  t.gamma_db.fill(gamma_db);
  return t;
}

}  // namespace lorasim
