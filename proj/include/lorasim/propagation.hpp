#pragma once

#include "lorasim/geometry.hpp"
#include "lorasim/phy.hpp"

namespace lorasim {

/// Frozen propagation outcome of one ordered link. Shadowing and
/// outdoor-to-indoor loss are kept separate from the distance-dependent path
/// loss so tests can probe each term; the effective loss is their sum.
struct LinkState {
  bool los = true;
  double distance_2d_m = 0.0;
  double distance_3d_m = 0.0;
  double path_loss_db = 0.0;
  double shadowing_db = 0.0;
  double o2i_db = 0.0;
  bool validity_warning = false;  // geometry outside UMa applicability

  double effective_loss_db() const { return path_loss_db + shadowing_db + o2i_db; }
};

/// 3GPP TR 38.901 Urban Macro path loss (Table 7.4.1-1). LOS uses the
/// dual-slope PL1/PL2 split at the breakpoint distance computed from the
/// effective antenna heights (actual minus 1 m); NLOS takes the maximum of
/// the LOS value and the NLOS formula. d_2D below 10 m is clamped to 10 m.
/// Sets *validity_warning (if given) when the geometry leaves the model's
/// stated applicability range; the value is still returned.
double path_loss_uma_db(double fc_ghz, const Position& a, const Position& b, bool los,
                        bool* validity_warning = nullptr);

/// TR 38.901 Table 7.4.2-1 UMa line-of-sight probability (optional
/// alternative to the geometric building test).
double los_probability_uma(double distance_2d_m, double h_ut_m);

/// Lognormal shadow-fading standard deviation for UMa.
double shadow_sigma_db(bool los);

/// Link budget: P_R = P_T + G_T + G_R - (PL + shadowing + O2I).
double received_power_dbm(double tx_power_dbm, double g_tx_db, double g_rx_db,
                          const LinkState& link);

/// Coverage predicate: received power meets or exceeds the tabulated
/// sensitivity for (sf, bandwidth).
bool in_coverage(double p_r_dbm, const RadioProfile& profile, int sf, double bandwidth_hz);

}  // namespace lorasim
