#pragma once

#include <span>
#include <vector>

#include "lorasim/phy.hpp"

namespace lorasim {

/// One frame accepted at the gateway: the transmitting source (relay id
/// under the relayed architecture, ED id under the benchmarks) and its MAC
/// payload size.
struct DeliveredFrame {
  int source_id = -1;
  int bytes = 0;
};

struct LinkClassStats {
  long started = 0;
  long delivered = 0;
  long lost_noise = 0;         // below receiver sensitivity
  long lost_interference = 0;  // SIR under the capture threshold
  long in_flight = 0;          // truncated by the simulation horizon

  long lost() const { return lost_noise + lost_interference; }
};

/// Time split of one radio over the horizon; the three components always sum
/// to the simulation time.
struct DeviceLedger {
  double tx_onair_s = 0.0;
  double rx_window_s = 0.0;
  double sleep_s = 0.0;
  double tx_power_dbm = 0.0;
};

/// Three-state energy model: E = V * (I_tx(P) * t_tx + I_rx * t_rx +
/// I_sleep * t_sleep), in millijoules.
double device_energy_mj(const DeviceLedger& ledger, const RadioProfile& profile);

/// Everything measured in a single run.
struct RunMetrics {
  double sim_time_s = 0.0;

  std::vector<DeliveredFrame> delivered;  // gateway ledger, arrival order
  LinkClassStats gw_uplinks;              // frames addressed to the gateway
  LinkClassStats ed_to_relay;             // 2.4 GHz hop (relayed architecture)

  int unserved_eds = 0;
  long relay_dropped_frames = 0;
  int link_validity_warnings = 0;

  std::vector<double> ed_energy_mj;
  std::vector<double> relay_energy_mj;

  // Per EU868 radio on-air totals, for the regulatory bound check.
  std::vector<double> eu868_onair_s;
  double max_eu868_toa_s = 0.0;

  double throughput_bps() const;
  double ed_energy_mean_mj() const;
};

/// Network throughput: sum of 8 * B_i over the delivered ledger divided by
/// the horizon.
double throughput_bps(std::span<const DeliveredFrame> delivered, double sim_time_s);

/// Mean, sample standard deviation and normal-approximation 95% confidence
/// half-width of a set of per-run values.
struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  double ci95 = 0.0;
  int count = 0;
};

Summary summarize(std::span<const double> values);

}  // namespace lorasim
