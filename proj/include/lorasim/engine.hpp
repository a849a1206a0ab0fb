#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lorasim/metrics.hpp"
#include "lorasim/protocol.hpp"
#include "lorasim/scenario.hpp"

namespace lorasim {

enum class FailureCause { None, NoCoverage, Interference };

struct ReceptionOutcome {
  bool delivered = false;
  FailureCause cause = FailureCause::None;
};

/// One on-air frame. Interference from same-SF overlaps is accumulated
/// incrementally while the frame is (or overlaps something) on air, so
/// resolution at frame end needs no second pass over history.
struct Transmission {
  int id = -1;
  enum class Source { Ed, Relay };
  Source source = Source::Ed;
  int source_id = -1;

  enum class Target { Gateway, Relay };
  Target target = Target::Gateway;
  int target_id = -1;

  BandId band = BandId::EU868;
  int channel = 0;
  int sf = 7;

  double start_s = 0.0;
  double duration_s = 0.0;
  int payload_bytes = 0;
  double rx_power_dbm = 0.0;  // at the intended receiver, from the frozen links

  std::vector<PayloadRecord> records;  // aggregated payloads (relay frames)

  double interference_mw = 0.0;  // sum of same-SF overlapping rx powers
  int overlap_count = 0;

  double end_s() const { return start_s + duration_s; }
};

/// Eq.-style reception rule: the frame is lost below sensitivity; otherwise
/// it is delivered when no same-SF overlap occurred or when the signal-to-
/// interference ratio meets the capture threshold for its SF.
ReceptionOutcome resolve_reception(double rx_power_dbm, int sf, double bandwidth_hz,
                                   double interference_mw, int overlap_count,
                                   const RadioProfile& profile, const CaptureTable& capture);

/// Tracks concurrent transmissions per (band, channel) and feeds same-SF
/// interference into every overlapping pair. Any positive-length overlap
/// counts for the whole frame; different-SF overlaps are ignored.
class CollisionTracker {
 public:
  /// Register `id` as on air; mutually accumulates interference with all
  /// currently active same-channel transmissions.
  void begin(int id, std::vector<Transmission>& all);
  /// Remove `id` from the active set.
  void end(int id, std::vector<Transmission>& all);

 private:
  std::unordered_map<int, std::vector<int>> active_;  // channel key -> tx ids
};

/// Runs a fixed schedule of transmissions through the same collision
/// machinery the full simulation uses (ends processed before coincident
/// starts) and resolves each frame. Transmission ids must equal the vector
/// indices. Exposed for collision-model testing.
std::vector<ReceptionOutcome> resolve_schedule(std::vector<Transmission>& transmissions,
                                               const RadioTables& radios);

/// Discrete-event simulation of one scenario over [0, sim_time].
/// Deterministic given the scenario (which embeds all seeds).
RunMetrics simulate(const Scenario& scenario);

/// Variant reusing precomputed links/clusters (the CLI path computes them
/// once per run anyway; tests sometimes want to inspect them).
RunMetrics simulate(const Scenario& scenario, const LinkTable& links, const RadioTables& radios);

}  // namespace lorasim
