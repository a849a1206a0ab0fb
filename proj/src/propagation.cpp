#include "lorasim/propagation.hpp"

#include <algorithm>
#include <cmath>

namespace lorasim {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kEnvironmentHeight = 1.0;  // h_E for UMa below 13 m UT height
}  // namespace

double path_loss_uma_db(double fc_ghz, const Position& a, const Position& b, bool los,
                        bool* validity_warning) {
  const double h_bs = std::max(a.z, b.z);
  const double h_ut = std::min(a.z, b.z);
  double d_2d = std::hypot(a.x - b.x, a.y - b.y);
  d_2d = std::max(d_2d, 10.0);
  const double d_3d = std::hypot(d_2d, h_bs - h_ut);

  if (validity_warning != nullptr) {
    *validity_warning = h_ut < 1.5 || h_ut > 22.5 || h_bs != 25.0 || d_2d > 5000.0;
  }

  const double freq_term = 20.0 * std::log10(fc_ghz);
  const double h_bs_eff = std::max(h_bs - kEnvironmentHeight, 0.0);
  const double h_ut_eff = std::max(h_ut - kEnvironmentHeight, 0.0);
  const double d_bp = 4.0 * h_bs_eff * h_ut_eff * (fc_ghz * 1e9) / kSpeedOfLight;

  double pl_los;
  if (d_2d <= d_bp || d_bp <= 0.0) {
    pl_los = 28.0 + 22.0 * std::log10(d_3d) + freq_term;
  } else {
    pl_los = 28.0 + 40.0 * std::log10(d_3d) + freq_term -
             9.0 * std::log10(d_bp * d_bp + (h_bs - h_ut) * (h_bs - h_ut));
  }
  if (los) return pl_los;

  const double pl_nlos =
      13.54 + 39.08 * std::log10(d_3d) + freq_term - 0.6 * (h_ut - 1.5);
  return std::max(pl_los, pl_nlos);
}

double los_probability_uma(double distance_2d_m, double h_ut_m) {
  const double d = distance_2d_m;
  if (d <= 18.0) return 1.0;
  const double base = 18.0 / d + std::exp(-d / 63.0) * (1.0 - 18.0 / d);
  double c = 0.0;
  if (h_ut_m > 13.0) {
    const double clamped = std::min(h_ut_m, 23.0);
    c = std::pow((clamped - 13.0) / 10.0, 1.5);
  }
  const double uplift = 1.0 + c * (5.0 / 4.0) * std::pow(d / 100.0, 3) * std::exp(-d / 150.0);
  return std::min(base * uplift, 1.0);
}

double shadow_sigma_db(bool los) { return los ? 4.0 : 6.0; }

double received_power_dbm(double tx_power_dbm, double g_tx_db, double g_rx_db,
                          const LinkState& link) {
  return tx_power_dbm + g_tx_db + g_rx_db - link.effective_loss_db();
}

bool in_coverage(double p_r_dbm, const RadioProfile& profile, int sf, double bandwidth_hz) {
  return p_r_dbm >= sensitivity_dbm(profile, sf, bandwidth_hz);
}

}  // namespace lorasim
