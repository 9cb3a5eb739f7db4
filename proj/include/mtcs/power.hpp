#pragma once

#include <span>
#include <vector>

#include "mtcs/geometry.hpp"
#include "mtcs/network.hpp"
#include "mtcs/offload.hpp"

namespace mtcs {

/// EARTH linear model: n_trx * (p0 + delta_p * p_max_tx * load) when active,
/// n_trx * p_sleep otherwise. `load` must lie in [0, 1].
double bs_power_w(const PowerProfile& profile, bool active, double load);

struct StationPower {
  int station_id = 0;
  double watts = 0.0;
};

struct NetworkPowerBreakdown {
  std::vector<StationPower> per_station;  // ascending station id
  double terrestrial_total = 0.0;
  double ntn_dynamic_total = 0.0;
  double uav_static_total = 0.0;
  double grand_total = 0.0;
};

/// Network power for one switching decision.
///
/// `on_off` follows net.sbs order. ON SBSs keep their assigned users; the MBS
/// is always active and its load includes what the ledger placed on it. Loads
/// above 1 are charged at load 1. NTN destinations add their per-unit dynamic
/// rate times placed demand, and each UAV serving at least one user adds
/// uav_static_w; both are zero when count_ntn_power is off.
///
/// Summation order is fixed (stations by ascending id, then
/// grand = terrestrial + ntn_dynamic + uav_static), so equal inputs give
/// bit-identical totals. Throws std::invalid_argument for a ledger entry that
/// names a station outside the network or a non-destination tier.
NetworkPowerBreakdown network_power_w(const Network& net, const Assignment& assignment,
                                      const std::vector<bool>& on_off, std::span<const LedgerEntry> ledger,
                                      bool with_per_station = true);

inline NetworkPowerBreakdown network_power_w(const Network& net, const Assignment& assignment,
                                             const std::vector<bool>& on_off, const Placement& placement) {
  return network_power_w(net, assignment, on_off, placement.ledger);
}

}  // namespace mtcs
