#pragma once

#include <cstdint>
#include <vector>

#include "lorasim/config.hpp"
#include "lorasim/geometry.hpp"
#include "lorasim/propagation.hpp"
#include "lorasim/rng.hpp"

namespace lorasim {

struct Node {
  Position pos;
  bool indoor = false;
};

/// Immutable deployment for one run: node placement, building grid and the
/// run's root seed. Everything downstream (links, traffic, channel draws) is
/// a pure function of this object.
struct Scenario {
  ExperimentConfig config;
  int run_index = 0;
  std::uint64_t run_seed = 0;

  Position gateway;
  std::vector<Node> eds;
  std::vector<Node> relays;
  BuildingGrid grid;

  Rng stream(Stream id) const;
};

/// Deterministic generation from (config.base_seed, run_index). Node
/// positions are i.i.d. uniform over the square; the gateway sits at the
/// exact center. Throws ConfigError for invalid configurations.
Scenario generate_scenario(const ExperimentConfig& config, int run_index);

/// Stable node identifiers used to key per-pair randomness.
std::uint64_t ed_uid(int index);
std::uint64_t relay_uid(int index);
std::uint64_t gateway_uid();

/// Long-term received powers for every link class the configured
/// architecture uses, frozen at t = 0 (shadowing and O2I included). These
/// are the powers both the protocol logic (clustering, ADR) and the
/// reception model see for the whole run.
struct LinkTable {
  // Proposal: ed_to_relay[i][j] at 2.4 GHz and relay_to_gw[j] at EU868.
  std::vector<std::vector<double>> ed_to_relay_dbm;
  std::vector<double> relay_to_gw_dbm;
  // Benchmarks: ed_to_gw[i] at the architecture's band.
  std::vector<double> ed_to_gw_dbm;
  int validity_warnings = 0;
};

/// One ordered link, fully resolved (LOS, path loss, shadowing, O2I).
LinkState make_link_state(const Scenario& scenario, const Position& from, bool from_indoor,
                          const Position& to, bool to_indoor, double fc_ghz,
                          std::uint64_t from_uid, std::uint64_t to_uid);

LinkTable build_link_table(const Scenario& scenario);

}  // namespace lorasim
