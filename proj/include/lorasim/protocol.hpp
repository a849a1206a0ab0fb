#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "lorasim/config.hpp"
#include "lorasim/rng.hpp"
#include "lorasim/scenario.hpp"

namespace lorasim {

/// Lowest SF in the band's valid set whose sensitivity plus `margin_db` the
/// received power still clears. Falls back to the band's maximum SF when only
/// the bare sensitivity holds there; nullopt means no coverage at all.
std::optional<int> adr_select_sf(double p_r_dbm, const RadioProfile& profile, BandId band_id,
                                 double bandwidth_hz, double margin_db);

/// Rework candidate relay SFs so assignments are unique when possible.
/// Relays are visited in ascending id order; a conflicting candidate is
/// raised to the smallest still-unassigned SF >= it that keeps bare-
/// sensitivity coverage, and kept as a duplicate when no such SF exists.
/// Entries < 0 (no coverage) pass through untouched.
std::vector<int> orthogonalize_relay_sfs(const std::vector<int>& candidates,
                                         const std::vector<double>& relay_to_gw_dbm,
                                         const RadioProfile& profile, double bandwidth_hz);

/// One relay plus its member end devices on a dedicated 2.4 GHz channel.
struct Cluster {
  int relay_id = -1;
  std::vector<int> member_eds;
  int channel = -1;
};

/// Resolved association state of a Proposal deployment.
struct ClusterPlan {
  std::vector<Cluster> clusters;        // indexed by relay id
  std::vector<int> ed_cluster;          // per ED: serving relay id (argmax power)
  std::vector<int> ed_sf;               // per ED: uplink SF (max SF when unserved)
  std::vector<bool> ed_served;          // coverage to the serving relay at some SF
  std::vector<int> relay_sf;            // per relay: EU868 SF after orthogonalization
  std::vector<bool> relay_served;       // relay reaches the gateway at some SF
  int unserved_ed_count = 0;
};

/// Cluster formation from the frozen uplink powers: every ED joins the relay
/// it reaches strongest (ties to the lowest relay id); each cluster gets the
/// 2.4 GHz channel equal to its relay index. EDs covered by no relay at any
/// SF are marked unserved.
ClusterPlan form_clusters(const Scenario& scenario, const LinkTable& links,
                          const RadioTables& radios);

/// Per-relay aggregation buffer: payload records accumulate until adding one
/// more would exceed the SF's frame cap, at which point the pending set is
/// sealed into a frame. An exact fit seals including the new record.
struct PayloadRecord {
  int origin = -1;  // ED index, or the relay's own id for self-generated data
  int bytes = 0;
  double generated_at_s = 0.0;
};

struct SealedFrame {
  std::vector<PayloadRecord> records;
  int total_bytes = 0;
};

class RelayBuffer {
 public:
  RelayBuffer() = default;
  RelayBuffer(int relay_id, int max_frame_bytes)
      : relay_id_(relay_id), max_frame_bytes_(max_frame_bytes) {}

  /// Returns true when this record sealed a frame (pushed to the queue).
  /// Throws std::invalid_argument if the record alone exceeds the frame cap.
  bool enqueue(const PayloadRecord& record);

  int pending_bytes() const { return pending_bytes_; }
  int max_frame_bytes() const { return max_frame_bytes_; }
  const std::deque<SealedFrame>& frame_queue() const { return queue_; }
  bool queue_empty() const { return queue_.empty(); }
  SealedFrame pop_frame();
  long dropped_frames() const { return dropped_frames_; }

  /// Queue guard: sealing beyond this many waiting frames drops the sealed
  /// frame and counts it, flagging a duty-cycle-starved configuration.
  static constexpr std::size_t kMaxQueuedFrames = 10000;

 private:
  void seal();

  int relay_id_ = -1;
  int max_frame_bytes_ = 0;
  std::vector<PayloadRecord> pending_;
  int pending_bytes_ = 0;
  std::deque<SealedFrame> queue_;
  long dropped_frames_ = 0;
};

/// Regulatory duty-cycle bookkeeping for one radio. After scheduling a frame
/// of duration `toa` at `start`, the radio stays blocked until
/// start + toa / limit (i.e. an off period of toa * (1/limit - 1) follows
/// the transmission). A governor without a limit never delays.
class DutyCycleGovernor {
 public:
  DutyCycleGovernor() = default;
  explicit DutyCycleGovernor(std::optional<double> limit) : limit_(limit) {}

  /// Earliest permitted start at or after `ready_time`; updates the
  /// governor's state as if the transmission were committed.
  double gate(double ready_time_s, double toa_s);

  double next_allowed_s() const { return next_allowed_s_; }

 private:
  std::optional<double> limit_;
  double next_allowed_s_ = 0.0;
};

/// Uniform pick over the band's channel set. Clustered 2.4 GHz EDs do not
/// use this (their channel is pinned to the cluster's).
int pick_uplink_channel(BandId band_id, Rng& channel_rng);

}  // namespace lorasim
