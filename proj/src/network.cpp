#include "mtcs/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtcs {

std::optional<std::size_t> Network::find(int station_id) const {
  auto it = std::lower_bound(stations.begin(), stations.end(), station_id,
                             [](const BaseStation& s, int id) { return s.id < id; });
  if (it == stations.end() || it->id != station_id) return std::nullopt;
  return static_cast<std::size_t>(it - stations.begin());
}

const BaseStation& Network::station(int station_id) const {
  auto idx = find(station_id);
  if (!idx) throw std::out_of_range("station " + std::to_string(station_id) + " is not in the network");
  return stations[*idx];
}

Network build_network(const ScenarioConfig& config) {
  Network net;
  net.tier_set = config.tier_set;
  net.ntn = {config.ntn_dynamic_w_per_unit, config.uav_static_w, config.count_ntn_power};

  for (const BaseStation& bs : config.stations) {
    if (!config.tier_set.contains(bs.tier)) {
      net.warnings.push_back("station " + std::to_string(bs.id) + " (" + std::string(to_string(bs.tier)) +
                             ") dropped: tier not in tier_set");
      continue;
    }
    net.stations.push_back(bs);
  }
  std::sort(net.stations.begin(), net.stations.end(),
            [](const BaseStation& a, const BaseStation& b) { return a.id < b.id; });

  bool have_mbs = false;
  for (std::size_t i = 0; i < net.stations.size(); ++i) {
    if (net.stations[i].tier == TierId::TierI_SBS) net.sbs.push_back(i);
    if (net.stations[i].tier == TierId::TierI_MBS) {
      if (have_mbs) throw std::invalid_argument("network requires exactly one MBS");
      net.mbs = i;
      have_mbs = true;
    }
  }
  if (!have_mbs) throw std::invalid_argument("network requires exactly one MBS");
  if (net.sbs.empty()) throw std::invalid_argument("network requires at least one SBS");
  return net;
}

}  // namespace mtcs
