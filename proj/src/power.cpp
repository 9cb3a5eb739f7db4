#include "mtcs/power.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mtcs {

double bs_power_w(const PowerProfile& profile, bool active, double load) {
  if (!(load >= 0.0 && load <= 1.0)) throw std::invalid_argument("bs_power_w: load must lie in [0, 1]");
  if (!active) return profile.n_trx * profile.p_sleep_w;
  return profile.n_trx * (profile.p0_static_w + profile.delta_p * profile.p_max_tx_w * load);
}

NetworkPowerBreakdown network_power_w(const Network& net, const Assignment& assignment,
                                      const std::vector<bool>& on_off, std::span<const LedgerEntry> ledger,
                                      bool with_per_station) {
  if (on_off.size() != net.sbs.size())
    throw std::invalid_argument("network_power_w: on/off vector length must equal the SBS count");

  for (const LedgerEntry& e : ledger) {
    const auto idx = net.find(e.station_id);
    if (!idx)
      throw std::invalid_argument("network_power_w: placement references station " +
                                  std::to_string(e.station_id) + " outside tier_set");
    if (net.stations[*idx].tier == TierId::TierI_SBS)
      throw std::invalid_argument("network_power_w: SBS " + std::to_string(e.station_id) +
                                  " is not an offload destination");
  }
  auto placed = [&ledger](int station_id) -> const LedgerEntry* {
    for (const LedgerEntry& e : ledger)
      if (e.station_id == station_id) return &e;
    return nullptr;
  };

  NetworkPowerBreakdown out;
  if (with_per_station) out.per_station.reserve(net.stations.size());
  std::size_t sbs_k = 0;
  for (const BaseStation& bs : net.stations) {
    double watts = 0.0;
    switch (bs.tier) {
      case TierId::TierI_SBS: {
        const bool active = on_off[sbs_k++];
        watts = bs_power_w(bs.profile, active, active ? bs_load(assignment, bs).load : 0.0);
        out.terrestrial_total += watts;
        break;
      }
      case TierId::TierI_MBS: {
        const LedgerEntry* e = placed(bs.id);
        const int demand = assignment.assigned_demand(bs.id) + (e ? e->placed_demand : 0);
        watts = bs_power_w(bs.profile, true, std::min(1.0, demand / bs.capacity));
        out.terrestrial_total += watts;
        break;
      }
      default: {
        if (!net.ntn.count_ntn_power) break;
        const LedgerEntry* e = placed(bs.id);
        if (!e) break;
        const double dynamic = net.ntn.dynamic_w_per_unit.for_tier(bs.tier) * e->placed_demand;
        const double fixed = (bs.tier == TierId::TierII_UAV && e->placed_users > 0) ? net.ntn.uav_static_w : 0.0;
        out.ntn_dynamic_total += dynamic;
        out.uav_static_total += fixed;
        watts = dynamic + fixed;
        break;
      }
    }
    if (with_per_station) out.per_station.push_back({bs.id, watts});
  }
  out.grand_total = out.terrestrial_total + out.ntn_dynamic_total + out.uav_static_total;
  return out;
}

}  // namespace mtcs
