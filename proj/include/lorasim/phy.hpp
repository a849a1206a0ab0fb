#pragma once

#include <array>
#include <optional>
#include <vector>

namespace lorasim {

enum class BandId { EU868, ISM2G4 };

constexpr int kMinSf = 5;
constexpr int kMaxSf = 12;

/// Static per-band facts: carrier, channel plan, regulatory duty cycle,
/// maximum transmit power and the admissible spreading-factor range.
struct BandInfo {
  BandId id;
  double carrier_ghz;
  int channel_count;
  std::optional<double> duty_cycle_limit;  // fraction of time on air, or none
  double max_tx_power_dbm;
  int min_sf;
  int max_sf;
  double default_bandwidth_hz;
};

const BandInfo& band(BandId id);

/// True if `sf` is a legal spreading factor on `id` (SF5/SF6 exist only at
/// 2.4 GHz; EU868 admits SF7..SF12).
bool sf_valid(BandId id, int sf);

/// PHY configuration of a single transmission.
struct RadioParams {
  BandId band = BandId::EU868;
  int sf = 7;
  double bandwidth_hz = 125e3;
  int coding_rate = 1;  // k in 4/(4+k), k in 1..4
  double tx_power_dbm = 14.0;
  int preamble_symbols = 8;
  bool explicit_header = true;
  bool crc_on = true;
};

/// 2^SF / BW, seconds.
double symbol_duration_s(const RadioParams& params);

/// Low-data-rate optimization is mandated when the symbol time exceeds 16 ms.
bool low_data_rate_optimize(const RadioParams& params);

/// Full frame duration (preamble + 4.25 sync symbols + payload symbols) for
/// `payload_bytes` of MAC payload. Throws std::invalid_argument for an empty
/// payload or one exceeding the SF's cap.
double time_on_air_s(const RadioParams& params, int payload_bytes);

/// Largest MAC payload a frame may carry at `sf`. SF5/SF6 use the SF7 cap.
int max_payload_bytes(int sf);

/// Receiver and supply characteristics of one radio model. Sensitivities and
/// currents are transcribed from the vendor datasheets (see the .cpp) and can
/// be overridden through the experiment configuration.
struct RadioProfile {
  BandId band;
  double supply_voltage_v = 3.3;
  double rx_current_ma = 0.0;
  double sleep_current_ma = 0.0;
  // sensitivity_dbm[sf] at table_bandwidth_hz; entries outside the band's SF
  // range are unset.
  double table_bandwidth_hz = 0.0;
  std::array<std::optional<double>, kMaxSf + 1> sensitivity;
  // (output dBm, supply mA) pairs, ascending in power; lookup picks the
  // smallest tabulated power >= the requested one.
  std::vector<std::pair<double, double>> tx_current;
};

/// Tabulated sensitivity for (sf, bandwidth). Throws ConfigError when the
/// profile has no entry for the pair.
double sensitivity_dbm(const RadioProfile& profile, int sf, double bandwidth_hz);

/// Supply current for the given output power (ceiling lookup, clamped to the
/// highest tabulated entry).
double tx_current_ma(const RadioProfile& profile, double tx_power_dbm);

/// SX1272 characteristics, EU868 @ 125 kHz.
RadioProfile sx1272_profile();

/// SX1280 characteristics, 2.4 GHz @ 203 kHz.
RadioProfile sx1280_profile();

/// Co-SF capture thresholds, dB. SF5 and SF6 reuse the SF7 value when built
/// from a 7..12 table; the default is a flat 6 dB for every SF.
struct CaptureTable {
  std::array<double, kMaxSf + 1> gamma_db{};

  static CaptureTable uniform(double gamma_db);
  double gamma(int sf) const { return gamma_db[sf]; }
};

}  // namespace lorasim
