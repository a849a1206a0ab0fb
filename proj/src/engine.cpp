#include "lorasim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

namespace lorasim {

namespace {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline int channel_key(BandId band, int channel) {
  return (band == BandId::EU868 ? 0 : 64) + channel;
}

}  // namespace

ReceptionOutcome resolve_reception(double rx_power_dbm, int sf, double bandwidth_hz,
                                   double interference_mw, int overlap_count,
                                   const RadioProfile& profile, const CaptureTable& capture) {
  if (rx_power_dbm < sensitivity_dbm(profile, sf, bandwidth_hz)) {
    return {false, FailureCause::NoCoverage};
  }
  if (overlap_count == 0) {
    return {true, FailureCause::None};
  }
  const double sir_db = rx_power_dbm - 10.0 * std::log10(interference_mw);
  if (sir_db >= capture.gamma(sf)) {
    return {true, FailureCause::None};
  }
  return {false, FailureCause::Interference};
}

void CollisionTracker::begin(int id, std::vector<Transmission>& all) {
  Transmission& t = all[id];
  auto& active = active_[channel_key(t.band, t.channel)];
  for (int other_id : active) {
    Transmission& o = all[other_id];
    if (o.sf != t.sf) continue;  // inter-SF interference is ignored
    t.interference_mw += dbm_to_mw(o.rx_power_dbm);
    ++t.overlap_count;
    o.interference_mw += dbm_to_mw(t.rx_power_dbm);
    ++o.overlap_count;
  }
  active.push_back(id);
}

void CollisionTracker::end(int id, std::vector<Transmission>& all) {
  auto& active = active_[channel_key(all[id].band, all[id].channel)];
  const auto it = std::find(active.begin(), active.end(), id);
  if (it != active.end()) {
    *it = active.back();
    active.pop_back();
  }
}

std::vector<ReceptionOutcome> resolve_schedule(std::vector<Transmission>& transmissions,
                                               const RadioTables& radios) {
  struct Edge {
    double time;
    int rank;  // ends sort before coincident starts
    int id;
  };
  std::vector<Edge> edges;
  edges.reserve(transmissions.size() * 2);
  for (const Transmission& t : transmissions) {
    edges.push_back({t.start_s, 1, t.id});
    edges.push_back({t.end_s(), 0, t.id});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.id < b.id;
  });
  CollisionTracker tracker;
  for (const Edge& e : edges) {
    if (e.rank == 1) {
      tracker.begin(e.id, transmissions);
    } else {
      tracker.end(e.id, transmissions);
    }
  }
  std::vector<ReceptionOutcome> outcomes(transmissions.size());
  for (const Transmission& t : transmissions) {
    const RadioProfile& profile = radios.profile(t.band);
    outcomes[t.id] = resolve_reception(t.rx_power_dbm, t.sf, profile.table_bandwidth_hz,
                                       t.interference_mw, t.overlap_count, profile,
                                       radios.capture);
  }
  return outcomes;
}

namespace {

// RX1 opens one second after the uplink ends, RX2 two seconds after; both
// stay open for a configurable number of symbol times. The windows are pure
// energy bookkeeping (no downlink traffic exists), clipped so they never
// overlap the device's own next transmission or the horizon.
struct WindowAccumulator {
  double a1 = 0, b1 = 0, a2 = 0, b2 = 0;
  bool pending = false;

  void open(double tx_end_s, double window_s, double horizon_s) {
    a1 = std::min(tx_end_s + 1.0, horizon_s);
    b1 = std::min(tx_end_s + 1.0 + window_s, horizon_s);
    a2 = std::min(tx_end_s + 2.0, horizon_s);
    b2 = std::min(tx_end_s + 2.0 + window_s, horizon_s);
    pending = true;
  }
  double flush(double clip_s) {
    if (!pending) return 0.0;
    pending = false;
    return std::max(0.0, std::min(b1, clip_s) - a1) + std::max(0.0, std::min(b2, clip_s) - a2);
  }
};

struct EdState {
  bool transmits = false;
  bool served = false;
  BandId band = BandId::ISM2G4;
  int sf = 12;
  int fixed_channel = -1;  // < 0: draw uniformly per frame
  Transmission::Target target = Transmission::Target::Gateway;
  int target_id = -1;
  double rx_power_dbm = -1e9;
  double toa_s = 0.0;
  double symbol_s = 0.0;

  int pending = 0;
  std::deque<double> pending_gen_times;
  bool tx_scheduled = false;
  double busy_until_s = 0.0;
  std::optional<DutyCycleGovernor> governor;

  DeviceLedger ledger;
  WindowAccumulator windows;
};

struct RelayState {
  bool transmits = false;
  int sf = 12;
  double symbol_s = 0.0;
  RelayBuffer buffer;
  DutyCycleGovernor governor;
  bool tx_scheduled = false;
  double scheduled_toa_s = 0.0;
  double rx_power_dbm = -1e9;

  DeviceLedger ledger868;
  WindowAccumulator windows;
};

enum class EventKind : std::uint8_t { TxEnd = 0, EdPayload = 1, RelayPayload = 2, TxStart = 3 };

struct Event {
  double time;
  std::uint8_t rank;  // TxEnd < payload generation < TxStart at equal times
  std::uint64_t seq;
  EventKind kind;
  int index;  // node index for payload/TxStart events, transmission id for TxEnd
};

struct EventOrder {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.rank != b.rank) return a.rank > b.rank;
    return a.seq > b.seq;
  }
};

constexpr std::uint8_t rank_of(EventKind k) {
  switch (k) {
    case EventKind::TxEnd: return 0;
    case EventKind::EdPayload:
    case EventKind::RelayPayload: return 1;
    case EventKind::TxStart: return 2;
  }
  return 3;
}

class Simulator {
 public:
  Simulator(const Scenario& scenario, const LinkTable& links, const RadioTables& radios)
      : scn_(scenario),
        cfg_(scenario.config),
        links_(links),
        radios_(radios),
        horizon_(cfg_.sim_time_s),
        mac_rng_(scenario.stream(Stream::Mac)),
        channel_rng_(scenario.stream(Stream::Channel)) {}

  RunMetrics run() {
    setup_devices();
    schedule_traffic();
    metrics_.sim_time_s = horizon_;
    metrics_.link_validity_warnings = links_.validity_warnings;

    while (!events_.empty()) {
      const Event ev = events_.top();
      events_.pop();
      switch (ev.kind) {
        case EventKind::EdPayload: on_ed_payload(ev); break;
        case EventKind::RelayPayload: on_relay_payload(ev); break;
        case EventKind::TxStart: on_tx_start(ev); break;
        case EventKind::TxEnd: on_tx_end(ev); break;
      }
    }
    finalize();
    return std::move(metrics_);
  }

 private:
  void push_event(double time, EventKind kind, int index) {
    events_.push(Event{time, rank_of(kind), seq_++, kind, index});
  }

  void setup_devices() {
    const int n_eds = static_cast<int>(scn_.eds.size());
    eds_.resize(n_eds);

    if (cfg_.architecture == Architecture::Proposal) {
      plan_ = form_clusters(scn_, links_, radios_);
      metrics_.unserved_eds = plan_.unserved_ed_count;
      const int n_relays = static_cast<int>(scn_.relays.size());
      relays_.resize(n_relays);
      for (int j = 0; j < n_relays; ++j) {
        RelayState& rl = relays_[j];
        rl.sf = plan_.relay_sf[j];
        rl.symbol_s = symbol_duration_s(relay_params(j));
        rl.buffer = RelayBuffer(j, max_payload_bytes(rl.sf));
        rl.governor = DutyCycleGovernor(band(BandId::EU868).duty_cycle_limit);
        rl.rx_power_dbm = links_.relay_to_gw_dbm[j];
        rl.transmits = plan_.relay_served[j] || cfg_.uncovered_transmit;
        rl.ledger868.tx_power_dbm = cfg_.rl_tx_power_dbm;
      }
      for (int i = 0; i < n_eds; ++i) {
        EdState& ed = eds_[i];
        ed.band = BandId::ISM2G4;
        ed.ledger.tx_power_dbm = cfg_.ed_tx_power_dbm;
        const int cluster = plan_.ed_cluster[i];
        if (cluster < 0) continue;  // no relay exists to listen
        ed.served = plan_.ed_served[i];
        ed.transmits = ed.served || cfg_.uncovered_transmit;
        ed.sf = plan_.ed_sf[i];
        ed.fixed_channel = plan_.clusters[cluster].channel;
        ed.target = Transmission::Target::Relay;
        ed.target_id = cluster;
        ed.rx_power_dbm = links_.ed_to_relay_dbm[i][cluster];
        const RadioParams params = ed_params(i);
        ed.toa_s = time_on_air_s(params, cfg_.payload_bytes);
        ed.symbol_s = symbol_duration_s(params);
      }
    } else {
      const BandId ed_band = cfg_.architecture == Architecture::SubGHzOnly ? BandId::EU868
                                                                           : BandId::ISM2G4;
      const RadioProfile& profile = radios_.profile(ed_band);
      const double bw = bandwidth_of(ed_band);
      for (int i = 0; i < n_eds; ++i) {
        EdState& ed = eds_[i];
        ed.band = ed_band;
        ed.ledger.tx_power_dbm = cfg_.ed_tx_power_dbm;
        ed.target = Transmission::Target::Gateway;
        ed.rx_power_dbm = links_.ed_to_gw_dbm[i];
        const auto sf = adr_select_sf(ed.rx_power_dbm, profile, ed_band, bw, cfg_.adr_margin_db);
        ed.served = sf.has_value();
        if (!ed.served) ++metrics_.unserved_eds;
        ed.transmits = ed.served || cfg_.uncovered_transmit;
        ed.sf = sf.value_or(band(ed_band).max_sf);
        if (ed_band == BandId::EU868 && cfg_.ed_duty_cycle) {
          ed.governor = DutyCycleGovernor(band(BandId::EU868).duty_cycle_limit);
        }
        const RadioParams params = ed_params(i);
        ed.toa_s = time_on_air_s(params, cfg_.payload_bytes);
        ed.symbol_s = symbol_duration_s(params);
      }
    }
  }

  void schedule_traffic() {
    // Initial phases are drawn uniformly in [0, T_U) to desynchronize the
    // periodic sources; the draw order is fixed (EDs, then relays).
    std::vector<double> ed_phase(scn_.eds.size());
    for (double& p : ed_phase) p = mac_rng_.uniform(0.0, cfg_.payload_interval_s);
    std::vector<double> relay_phase(scn_.relays.size());
    for (double& p : relay_phase) p = mac_rng_.uniform(0.0, cfg_.payload_interval_s);

    for (std::size_t i = 0; i < scn_.eds.size(); ++i) {
      if (!eds_[i].transmits) continue;
      if (ed_phase[i] <= horizon_) push_event(ed_phase[i], EventKind::EdPayload, static_cast<int>(i));
    }
    if (cfg_.architecture == Architecture::Proposal && cfg_.relay_self_traffic) {
      for (std::size_t j = 0; j < scn_.relays.size(); ++j) {
        if (!relays_[j].transmits) continue;
        if (relay_phase[j] <= horizon_) {
          push_event(relay_phase[j], EventKind::RelayPayload, static_cast<int>(j));
        }
      }
    }
  }

  double bandwidth_of(BandId b) const {
    return b == BandId::EU868 ? cfg_.bw_eu868_hz : cfg_.bw_ism2g4_hz;
  }

  RadioParams ed_params(int i) const {
    return make_radio_params(cfg_, eds_[i].band, eds_[i].sf, cfg_.ed_tx_power_dbm);
  }

  RadioParams relay_params(int j) const {
    return make_radio_params(cfg_, BandId::EU868, relays_[j].sf, cfg_.rl_tx_power_dbm);
  }

  void on_ed_payload(const Event& ev) {
    EdState& ed = eds_[ev.index];
    ++ed.pending;
    if (cfg_.architecture == Architecture::Proposal) {
      ed.pending_gen_times.push_back(ev.time);
    }
    const double next = ev.time + cfg_.payload_interval_s;
    if (next <= horizon_) push_event(next, EventKind::EdPayload, ev.index);
    try_schedule_ed(ev.index, ev.time);
  }

  void on_relay_payload(const Event& ev) {
    RelayState& rl = relays_[ev.index];
    const bool sealed =
        rl.buffer.enqueue(PayloadRecord{-(ev.index + 1), cfg_.payload_bytes, ev.time});
    const double next = ev.time + cfg_.payload_interval_s;
    if (next <= horizon_) push_event(next, EventKind::RelayPayload, ev.index);
    if (sealed) try_schedule_relay(ev.index, ev.time);
  }

  void try_schedule_ed(int i, double now) {
    EdState& ed = eds_[i];
    if (ed.tx_scheduled || ed.pending == 0 || !ed.transmits) return;
    const double ready = std::max(now, ed.busy_until_s);
    const double start = ed.governor ? ed.governor->gate(ready, ed.toa_s) : ready;
    ed.tx_scheduled = true;
    if (start >= horizon_) return;  // would never get on air before the end
    push_event(start, EventKind::TxStart, i);
  }

  void try_schedule_relay(int j, double now) {
    RelayState& rl = relays_[j];
    if (rl.tx_scheduled || rl.buffer.queue_empty() || !rl.transmits) return;
    const SealedFrame& front = rl.buffer.frame_queue().front();
    rl.scheduled_toa_s = time_on_air_s(relay_params(j), front.total_bytes);
    const double start = rl.governor.gate(now, rl.scheduled_toa_s);
    rl.tx_scheduled = true;
    if (start >= horizon_) return;
    push_event(start, EventKind::TxStart, kRelayIndexBase + j);
  }

  void on_tx_start(const Event& ev) {
    if (ev.time >= horizon_) return;
    if (ev.index >= kRelayIndexBase) {
      start_relay_tx(ev.index - kRelayIndexBase, ev.time);
    } else {
      start_ed_tx(ev.index, ev.time);
    }
  }

  void start_ed_tx(int i, double start) {
    EdState& ed = eds_[i];
    --ed.pending;
    double gen_time = start;
    if (!ed.pending_gen_times.empty()) {
      gen_time = ed.pending_gen_times.front();
      ed.pending_gen_times.pop_front();
    }

    Transmission t;
    t.id = static_cast<int>(txs_.size());
    t.source = Transmission::Source::Ed;
    t.source_id = i;
    t.target = ed.target;
    t.target_id = ed.target_id;
    t.band = ed.band;
    t.channel = ed.fixed_channel >= 0 ? ed.fixed_channel : pick_uplink_channel(ed.band, channel_rng_);
    t.sf = ed.sf;
    t.start_s = start;
    t.duration_s = ed.toa_s;
    t.payload_bytes = cfg_.payload_bytes;
    t.rx_power_dbm = ed.rx_power_dbm;
    if (cfg_.architecture == Architecture::Proposal) {
      t.records.push_back(PayloadRecord{i, cfg_.payload_bytes, gen_time});
    }

    ed.busy_until_s = t.end_s();
    ed.ledger.tx_onair_s += std::min(t.end_s(), horizon_) - start;
    ed.ledger.rx_window_s += ed.windows.flush(start);
    class_stats(t).started++;

    txs_.push_back(std::move(t));
    tracker_.begin(static_cast<int>(txs_.size()) - 1, txs_);
    push_event(txs_.back().end_s(), EventKind::TxEnd, txs_.back().id);
  }

  void start_relay_tx(int j, double start) {
    RelayState& rl = relays_[j];
    SealedFrame frame = rl.buffer.pop_frame();

    Transmission t;
    t.id = static_cast<int>(txs_.size());
    t.source = Transmission::Source::Relay;
    t.source_id = j;
    t.target = Transmission::Target::Gateway;
    t.target_id = -1;
    t.band = BandId::EU868;
    t.channel = pick_uplink_channel(BandId::EU868, channel_rng_);
    t.sf = rl.sf;
    t.start_s = start;
    t.duration_s = rl.scheduled_toa_s;
    t.payload_bytes = frame.total_bytes;
    t.rx_power_dbm = rl.rx_power_dbm;
    t.records = std::move(frame.records);

    rl.ledger868.tx_onair_s += std::min(t.end_s(), horizon_) - start;
    rl.ledger868.rx_window_s += rl.windows.flush(start);
    class_stats(t).started++;

    txs_.push_back(std::move(t));
    tracker_.begin(static_cast<int>(txs_.size()) - 1, txs_);
    push_event(txs_.back().end_s(), EventKind::TxEnd, txs_.back().id);
  }

  void on_tx_end(const Event& ev) {
    Transmission& t = txs_[ev.index];
    if (ev.time > horizon_) {
      class_stats(t).in_flight++;
      return;  // truncated by the horizon: neither delivered nor lost
    }
    tracker_.end(t.id, txs_);

    const RadioProfile& profile = radios_.profile(t.band);
    const ReceptionOutcome outcome =
        resolve_reception(t.rx_power_dbm, t.sf, bandwidth_of(t.band), t.interference_mw,
                          t.overlap_count, profile, radios_.capture);
    LinkClassStats& stats = class_stats(t);
    if (outcome.delivered) {
      stats.delivered++;
    } else if (outcome.cause == FailureCause::NoCoverage) {
      stats.lost_noise++;
    } else {
      stats.lost_interference++;
    }

    if (t.source == Transmission::Source::Ed) {
      EdState& ed = eds_[t.source_id];
      ed.windows.open(ev.time, cfg_.rx_window_symbols * ed.symbol_s, horizon_);
      ed.tx_scheduled = false;
      try_schedule_ed(t.source_id, ev.time);
    } else {
      RelayState& rl = relays_[t.source_id];
      rl.windows.open(ev.time, cfg_.rx_window_symbols * rl.symbol_s, horizon_);
      rl.tx_scheduled = false;
      try_schedule_relay(t.source_id, ev.time);
    }

    if (!outcome.delivered) return;

    if (t.target == Transmission::Target::Gateway) {
      metrics_.delivered.push_back(DeliveredFrame{t.source_id, t.payload_bytes});
    } else {
      // Aggregation: the relay absorbs the ED payload and, once the pending
      // set would overflow the SF's frame cap, seals a forwarding frame.
      RelayState& rl = relays_[t.target_id];
      bool sealed = false;
      for (const PayloadRecord& record : t.records) {
        sealed = rl.buffer.enqueue(record) || sealed;
      }
      if (sealed) try_schedule_relay(t.target_id, ev.time);
    }
  }

  LinkClassStats& class_stats(const Transmission& t) {
    return t.target == Transmission::Target::Gateway ? metrics_.gw_uplinks : metrics_.ed_to_relay;
  }

  void finalize() {
    const RadioProfile& eu = radios_.eu868;
    const RadioProfile& ism = radios_.ism2g4;

    metrics_.ed_energy_mj.resize(eds_.size());
    for (std::size_t i = 0; i < eds_.size(); ++i) {
      EdState& ed = eds_[i];
      ed.ledger.rx_window_s += ed.windows.flush(horizon_);
      ed.ledger.sleep_s = horizon_ - ed.ledger.tx_onair_s - ed.ledger.rx_window_s;
      metrics_.ed_energy_mj[i] =
          device_energy_mj(ed.ledger, ed.band == BandId::EU868 ? eu : ism);
      if (ed.band == BandId::EU868) metrics_.eu868_onair_s.push_back(ed.ledger.tx_onair_s);
    }

    metrics_.relay_energy_mj.resize(relays_.size());
    for (std::size_t j = 0; j < relays_.size(); ++j) {
      RelayState& rl = relays_[j];
      rl.ledger868.rx_window_s += rl.windows.flush(horizon_);
      rl.ledger868.sleep_s = horizon_ - rl.ledger868.tx_onair_s - rl.ledger868.rx_window_s;
      // Second radio: the 2.4 GHz receiver listens on the cluster channel
      // for the entire run.
      const double rx_radio_mj = ism.supply_voltage_v * ism.rx_current_ma * horizon_;
      metrics_.relay_energy_mj[j] = device_energy_mj(rl.ledger868, eu) + rx_radio_mj;
      metrics_.eu868_onair_s.push_back(rl.ledger868.tx_onair_s);
      metrics_.relay_dropped_frames += rl.buffer.dropped_frames();
    }

    for (const Transmission& t : txs_) {
      if (t.band == BandId::EU868) {
        metrics_.max_eu868_toa_s = std::max(metrics_.max_eu868_toa_s, t.duration_s);
      }
    }
  }

  static constexpr int kRelayIndexBase = 1 << 24;

  const Scenario& scn_;
  const ExperimentConfig& cfg_;
  const LinkTable& links_;
  const RadioTables& radios_;
  const double horizon_;

  Rng mac_rng_;
  Rng channel_rng_;

  ClusterPlan plan_;
  std::vector<EdState> eds_;
  std::vector<RelayState> relays_;
  std::vector<Transmission> txs_;
  CollisionTracker tracker_;
  std::priority_queue<Event, std::vector<Event>, EventOrder> events_;
  std::uint64_t seq_ = 0;
  RunMetrics metrics_;
};

}  // namespace

RunMetrics simulate(const Scenario& scenario, const LinkTable& links, const RadioTables& radios) {
  Simulator sim(scenario, links, radios);
  return sim.run();
}

RunMetrics simulate(const Scenario& scenario) {
  const LinkTable links = build_link_table(scenario);
  const RadioTables radios = make_radio_tables(scenario.config);
  return simulate(scenario, links, radios);
}

}  // namespace lorasim
