#include "lorasim/scenario.hpp"

#include <cmath>

#include "lorasim/errors.hpp"

namespace lorasim {

Rng Scenario::stream(Stream id) const {
  return Rng(derive_seed(run_seed, {static_cast<std::uint64_t>(id)}));
}

std::uint64_t ed_uid(int index) { return 0x100000ull + static_cast<std::uint64_t>(index); }
std::uint64_t relay_uid(int index) { return 0x200000ull + static_cast<std::uint64_t>(index); }
std::uint64_t gateway_uid() { return 0x300000ull; }

Scenario generate_scenario(const ExperimentConfig& config, int run_index) {
  validate(config);

  Scenario s;
  s.config = config;
  s.run_index = run_index;
  s.run_seed = derive_seed(config.base_seed, {static_cast<std::uint64_t>(run_index)});
  s.grid = BuildingGrid{config.area_side_m, config.building_side_m, config.building_pitch_m,
                        config.building_height_m};
  s.gateway = Position{config.area_side_m / 2.0, config.area_side_m / 2.0, config.gw_height_m};

  Rng placement = s.stream(Stream::Placement);
  const auto place = [&]() {
    Node node;
    node.pos.x = placement.uniform(0.0, config.area_side_m);
    node.pos.y = placement.uniform(0.0, config.area_side_m);
    node.pos.z = config.node_height_m;
    node.indoor = point_in_building(s.grid, node.pos.x, node.pos.y);
    return node;
  };
  s.eds.reserve(config.n_eds);
  for (int i = 0; i < config.n_eds; ++i) s.eds.push_back(place());
  if (config.architecture == Architecture::Proposal) {
    s.relays.reserve(config.n_relays);
    for (int j = 0; j < config.n_relays; ++j) s.relays.push_back(place());
  }
  return s;
}

LinkState make_link_state(const Scenario& scenario, const Position& from, bool from_indoor,
                          const Position& to, bool to_indoor, double fc_ghz,
                          std::uint64_t from_uid, std::uint64_t to_uid) {
  const ExperimentConfig& cfg = scenario.config;
  LinkState link;
  link.distance_2d_m = std::hypot(from.x - to.x, from.y - to.y);
  link.distance_3d_m = std::hypot(link.distance_2d_m, from.z - to.z);

  if (cfg.probabilistic_los) {
    const double h_ut = std::min(from.z, to.z);
    Rng los_rng(derive_seed(scenario.run_seed,
                            {static_cast<std::uint64_t>(Stream::Los), from_uid, to_uid}));
    link.los = los_rng.uniform() < los_probability_uma(link.distance_2d_m, h_ut);
  } else {
    link.los = is_los(from, to, scenario.grid);
  }

  link.path_loss_db = path_loss_uma_db(fc_ghz, from, to, link.los, &link.validity_warning);

  if (cfg.shadowing) {
    Rng shadow_rng(derive_seed(scenario.run_seed,
                               {static_cast<std::uint64_t>(Stream::Shadowing), from_uid, to_uid}));
    link.shadowing_db = shadow_rng.normal(0.0, shadow_sigma_db(link.los));
  }

  // One wall penalty per indoor endpoint. The gateway is mast-mounted and
  // never indoor.
  link.o2i_db = cfg.o2i_loss_db * ((from_indoor ? 1 : 0) + (to_indoor ? 1 : 0));
  return link;
}

LinkTable build_link_table(const Scenario& s) {
  const ExperimentConfig& cfg = s.config;
  LinkTable table;
  int warnings = 0;

  const auto link_power = [&](const Node& from, std::uint64_t fuid, const Position& to,
                              bool to_indoor, std::uint64_t tuid, double fc_ghz, double tx_dbm,
                              double g_tx, double g_rx) {
    const LinkState link =
        make_link_state(s, from.pos, from.indoor, to, to_indoor, fc_ghz, fuid, tuid);
    if (link.validity_warning) ++warnings;
    return received_power_dbm(tx_dbm, g_tx, g_rx, link);
  };

  if (cfg.architecture == Architecture::Proposal) {
    const double fc24 = band(BandId::ISM2G4).carrier_ghz;
    const double fc868 = band(BandId::EU868).carrier_ghz;
    table.ed_to_relay_dbm.resize(s.eds.size());
    for (std::size_t i = 0; i < s.eds.size(); ++i) {
      auto& row = table.ed_to_relay_dbm[i];
      row.resize(s.relays.size());
      for (std::size_t j = 0; j < s.relays.size(); ++j) {
        row[j] = link_power(s.eds[i], ed_uid(static_cast<int>(i)), s.relays[j].pos,
                            s.relays[j].indoor, relay_uid(static_cast<int>(j)), fc24,
                            cfg.ed_tx_power_dbm, cfg.ed_antenna_gain_db, cfg.rl_antenna_gain_db);
      }
    }
    table.relay_to_gw_dbm.resize(s.relays.size());
    for (std::size_t j = 0; j < s.relays.size(); ++j) {
      table.relay_to_gw_dbm[j] =
          link_power(s.relays[j], relay_uid(static_cast<int>(j)), s.gateway, false, gateway_uid(),
                     fc868, cfg.rl_tx_power_dbm, cfg.rl_antenna_gain_db, cfg.gw_antenna_gain_db);
    }
  } else {
    const BandId ed_band = cfg.architecture == Architecture::SubGHzOnly ? BandId::EU868
                                                                        : BandId::ISM2G4;
    const double fc = band(ed_band).carrier_ghz;
    table.ed_to_gw_dbm.resize(s.eds.size());
    for (std::size_t i = 0; i < s.eds.size(); ++i) {
      table.ed_to_gw_dbm[i] =
          link_power(s.eds[i], ed_uid(static_cast<int>(i)), s.gateway, false, gateway_uid(), fc,
                     cfg.ed_tx_power_dbm, cfg.ed_antenna_gain_db, cfg.gw_antenna_gain_db);
    }
  }
  table.validity_warnings = warnings;
  return table;
}

}  // namespace lorasim
