#include "lorasim/metrics.hpp"

#include <cmath>

namespace lorasim {

double device_energy_mj(const DeviceLedger& ledger, const RadioProfile& profile) {
  const double i_tx = tx_current_ma(profile, ledger.tx_power_dbm);
  const double ma_seconds = i_tx * ledger.tx_onair_s + profile.rx_current_ma * ledger.rx_window_s +
                            profile.sleep_current_ma * ledger.sleep_s;
  return profile.supply_voltage_v * ma_seconds;
}

double throughput_bps(std::span<const DeliveredFrame> delivered, double sim_time_s) {
  double bits = 0.0;
  for (const DeliveredFrame& f : delivered) bits += 8.0 * f.bytes;
  return bits / sim_time_s;
}

double RunMetrics::throughput_bps() const {
  return lorasim::throughput_bps(delivered, sim_time_s);
}

double RunMetrics::ed_energy_mean_mj() const {
  if (ed_energy_mj.empty()) return 0.0;
  double sum = 0.0;
  for (double e : ed_energy_mj) sum += e;
  return sum / static_cast<double>(ed_energy_mj.size());
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = static_cast<int>(values.size());
  if (s.count == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.count;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (s.count - 1));
    s.ci95 = 1.96 * s.stddev / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

}  // namespace lorasim
