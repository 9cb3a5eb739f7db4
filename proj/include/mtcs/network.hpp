#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtcs/scenario.hpp"

namespace mtcs {

struct NtnPowerSettings {
  NtnDynamicRates dynamic_w_per_unit;
  double uav_static_w = 0.0;
  bool count_ntn_power = true;
};

/// The usable part of a scenario: stations whose tier is in tier_set, sorted
/// by id. Stations outside tier_set are dropped and reported in `warnings`.
struct Network {
  std::vector<BaseStation> stations;
  std::vector<std::size_t> sbs;  // indices into `stations`; on/off vector order
  std::size_t mbs = 0;
  TierSet tier_set;
  NtnPowerSettings ntn;
  std::vector<std::string> warnings;

  std::optional<std::size_t> find(int station_id) const;
  const BaseStation& station(int station_id) const;  // throws std::out_of_range
  std::size_t sbs_count() const { return sbs.size(); }
};

/// Requires a valid config (see validate()).
Network build_network(const ScenarioConfig& config);

}  // namespace mtcs
