#include "mtcs/offload.hpp"

#include <algorithm>

namespace mtcs {

std::vector<TierId> tier_order(Approach approach, TierSet tiers) {
  static constexpr std::array<TierId, 4> energy{TierId::TierI_MBS, TierId::TierIII_HAPS, TierId::TierIV_SAT,
                                                TierId::TierII_UAV};
  static constexpr std::array<TierId, 4> delay{TierId::TierI_MBS, TierId::TierII_UAV, TierId::TierIII_HAPS,
                                               TierId::TierIV_SAT};
  const auto& full = approach == Approach::energy_focused ? energy : delay;
  std::vector<TierId> out;
  for (TierId t : full)
    if (t == TierId::TierI_MBS || tiers.contains(t)) out.push_back(t);
  return out;
}

bool violates_tolerance(Tolerance tolerance, TierId destination) {
  switch (tolerance) {
    case Tolerance::intolerant:
      return destination == TierId::TierIII_HAPS || destination == TierId::TierIV_SAT;
    case Tolerance::mid_tolerant:
      return destination == TierId::TierIV_SAT;
    case Tolerance::tolerant:
      return false;
  }
  return false;
}

bool admissible(Tolerance tolerance, TierId destination, Approach approach) {
  return approach == Approach::energy_focused || !violates_tolerance(tolerance, destination);
}

int Placement::placed_demand() const {
  int total = 0;
  for (const LedgerEntry& e : ledger) total += e.placed_demand;
  return total;
}

int Placement::placed_demand(TierId tier) const {
  int total = 0;
  for (const LedgerEntry& e : ledger)
    if (e.tier == tier) total += e.placed_demand;
  return total;
}

std::vector<LedgerEntry> build_destinations(const Network& net, const Assignment& assignment,
                                            Approach approach) {
  std::vector<LedgerEntry> out;
  for (TierId tier : tier_order(approach, net.tier_set)) {
    for (const BaseStation& bs : net.stations) {
      if (bs.tier != tier) continue;
      const double residual = bs.effective_capacity() - assignment.assigned_demand(bs.id);
      out.push_back({bs.id, tier, std::max(0.0, residual), 0, 0});
    }
  }
  return out;
}

bool offload_before(const OffloadUser& a, const OffloadUser& b) {
  if (a.demand != b.demand) return a.demand > b.demand;
  return a.user_id < b.user_id;
}

PlacementOutcome place_users(std::span<const OffloadUser> users, std::vector<LedgerEntry> destinations,
                             Approach approach) {
  std::vector<OffloadUser> order(users.begin(), users.end());
  std::sort(order.begin(), order.end(), offload_before);

  Placement p;
  p.users.reserve(order.size());
  for (const OffloadUser& u : order) {
    auto d = detail::place_one(destinations, u.demand, u.tolerance, approach);
    if (!d) return Infeasible{u.user_id};
    const LedgerEntry& e = destinations[*d];
    p.users.push_back({u.user_id, e.station_id, e.tier, u.tolerance, u.demand});
  }
  p.ledger = std::move(destinations);
  return p;
}

}  // namespace mtcs
