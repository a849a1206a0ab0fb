#include "lorasim/protocol.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lorasim {

std::optional<int> adr_select_sf(double p_r_dbm, const RadioProfile& profile, BandId band_id,
                                 double bandwidth_hz, double margin_db) {
  const BandInfo& b = band(band_id);
  for (int sf = b.min_sf; sf <= b.max_sf; ++sf) {
    if (p_r_dbm >= sensitivity_dbm(profile, sf, bandwidth_hz) + margin_db) return sf;
  }
  if (p_r_dbm >= sensitivity_dbm(profile, b.max_sf, bandwidth_hz)) return b.max_sf;
  return std::nullopt;
}

std::vector<int> orthogonalize_relay_sfs(const std::vector<int>& candidates,
                                         const std::vector<double>& relay_to_gw_dbm,
                                         const RadioProfile& profile, double bandwidth_hz) {
  std::vector<int> assigned = candidates;
  std::array<bool, kMaxSf + 1> taken{};
  const int max_sf = band(profile.band).max_sf;
  for (std::size_t j = 0; j < assigned.size(); ++j) {
    const int candidate = assigned[j];
    if (candidate < 0) continue;
    if (!taken[candidate]) {
      taken[candidate] = true;
      continue;
    }
    for (int sf = candidate + 1; sf <= max_sf; ++sf) {
      if (taken[sf]) continue;
      if (relay_to_gw_dbm[j] >= sensitivity_dbm(profile, sf, bandwidth_hz)) {
        assigned[j] = sf;
        taken[sf] = true;
        break;
      }
    }
    // No feasible unique SF: the candidate stays as a duplicate.
  }
  return assigned;
}

ClusterPlan form_clusters(const Scenario& scenario, const LinkTable& links,
                          const RadioTables& radios) {
  const ExperimentConfig& cfg = scenario.config;
  const int n_eds = static_cast<int>(scenario.eds.size());
  const int n_relays = static_cast<int>(scenario.relays.size());
  const RadioProfile& p24 = radios.ism2g4;
  const RadioProfile& p868 = radios.eu868;

  ClusterPlan plan;
  plan.clusters.resize(n_relays);
  for (int j = 0; j < n_relays; ++j) {
    plan.clusters[j].relay_id = j;
    plan.clusters[j].channel = j;  // unique by construction, R <= 16 enforced upstream
  }
  plan.ed_cluster.assign(n_eds, -1);
  plan.ed_sf.assign(n_eds, -1);
  plan.ed_served.assign(n_eds, false);

  for (int i = 0; i < n_eds; ++i) {
    int best = -1;
    double best_dbm = 0.0;
    for (int j = 0; j < n_relays; ++j) {
      const double dbm = links.ed_to_relay_dbm[i][j];
      if (best < 0 || dbm > best_dbm) {  // ties keep the lowest relay id
        best = j;
        best_dbm = dbm;
      }
    }
    if (best < 0) {
      ++plan.unserved_ed_count;
      continue;
    }
    plan.ed_cluster[i] = best;
    plan.clusters[best].member_eds.push_back(i);
    const auto sf = adr_select_sf(best_dbm, p24, BandId::ISM2G4, cfg.bw_ism2g4_hz,
                                  cfg.adr_margin_db);
    plan.ed_served[i] = sf.has_value();
    plan.ed_sf[i] = sf.value_or(band(BandId::ISM2G4).max_sf);
    if (!sf) ++plan.unserved_ed_count;
  }

  std::vector<int> candidates(n_relays, -1);
  plan.relay_served.assign(n_relays, false);
  for (int j = 0; j < n_relays; ++j) {
    const auto sf = adr_select_sf(links.relay_to_gw_dbm[j], p868, BandId::EU868, cfg.bw_eu868_hz,
                                  cfg.adr_margin_db);
    plan.relay_served[j] = sf.has_value();
    candidates[j] = sf.value_or(-1);
  }
  plan.relay_sf = orthogonalize_relay_sfs(candidates, links.relay_to_gw_dbm, p868,
                                          cfg.bw_eu868_hz);
  for (int j = 0; j < n_relays; ++j) {
    if (plan.relay_sf[j] < 0) plan.relay_sf[j] = band(BandId::EU868).max_sf;
  }
  return plan;
}

bool RelayBuffer::enqueue(const PayloadRecord& record) {
  if (record.bytes > max_frame_bytes_) {
    throw std::invalid_argument("relay " + std::to_string(relay_id_) + ": record of " +
                                std::to_string(record.bytes) + " B exceeds the frame cap of " +
                                std::to_string(max_frame_bytes_) + " B");
  }
  const int combined = pending_bytes_ + record.bytes;
  if (combined > max_frame_bytes_) {
    seal();
    pending_.push_back(record);
    pending_bytes_ = record.bytes;
    return true;
  }
  pending_.push_back(record);
  pending_bytes_ = combined;
  if (combined == max_frame_bytes_) {
    seal();
    return true;
  }
  return false;
}

void RelayBuffer::seal() {
  if (pending_.empty()) return;
  if (queue_.size() >= kMaxQueuedFrames) {
    ++dropped_frames_;
  } else {
    queue_.push_back(SealedFrame{std::move(pending_), pending_bytes_});
  }
  pending_.clear();
  pending_bytes_ = 0;
}

SealedFrame RelayBuffer::pop_frame() {
  SealedFrame frame = std::move(queue_.front());
  queue_.pop_front();
  return frame;
}

double DutyCycleGovernor::gate(double ready_time_s, double toa_s) {
  if (!limit_) return ready_time_s;
  const double start = std::max(ready_time_s, next_allowed_s_);
  next_allowed_s_ = start + toa_s / *limit_;
  return start;
}

int pick_uplink_channel(BandId band_id, Rng& channel_rng) {
  return static_cast<int>(channel_rng.uniform_int(band(band_id).channel_count));
}

}  // namespace lorasim
