#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mtcs/geometry.hpp"
#include "mtcs/network.hpp"
#include "mtcs/scenario.hpp"

namespace mtcs {

/// Destination tiers in offload priority order, filtered to `tiers`. The MBS
/// always comes first.
///   energy_focused: MBS, HAPS, satellite, UAV
///   delay_focused:  MBS, UAV, HAPS, satellite
std::vector<TierId> tier_order(Approach approach, TierSet tiers);

/// Under delay_focused, intolerant users may not go to Tier III/IV and
/// mid-tolerant users may not go to Tier IV. Energy-focused admits everything.
bool admissible(Tolerance tolerance, TierId destination, Approach approach);

/// True for the (tolerance, tier) pairs that count as dissatisfied.
bool violates_tolerance(Tolerance tolerance, TierId destination);

struct OffloadUser {
  int user_id = 0;
  int demand = 0;
  Tolerance tolerance = Tolerance::tolerant;
};

struct LedgerEntry {
  int station_id = 0;
  TierId tier = TierId::TierI_MBS;
  double residual = 0.0;  // effective capacity minus pre-assigned and placed demand
  int placed_demand = 0;
  int placed_users = 0;
  bool operator==(const LedgerEntry&) const = default;
};

struct PlacedUser {
  int user_id = 0;
  int station_id = 0;
  TierId tier = TierId::TierI_MBS;
  Tolerance tolerance = Tolerance::tolerant;
  int demand = 0;
  bool operator==(const PlacedUser&) const = default;
};

struct Placement {
  std::vector<PlacedUser> users;  // in processing order
  std::vector<LedgerEntry> ledger;

  int placed_demand() const;
  int placed_demand(TierId tier) const;
  bool operator==(const Placement&) const = default;
};

struct Infeasible {
  int user_id = 0;
};

using PlacementOutcome = std::variant<Placement, Infeasible>;

/// Offload ledger for `approach`: every usable destination station in
/// tier_order, each starting at capacity x availability minus its current
/// assigned demand (floored at 0).
std::vector<LedgerEntry> build_destinations(const Network& net, const Assignment& assignment,
                                            Approach approach);

/// Canonical processing order: demand descending, then user id ascending.
bool offload_before(const OffloadUser& a, const OffloadUser& b);

/// First-fit of whole users over `destinations` in order, users taken in
/// offload_before order. Returns the first user that fits nowhere.
PlacementOutcome place_users(std::span<const OffloadUser> users, std::vector<LedgerEntry> destinations,
                             Approach approach);

namespace detail {

// Places one user into `ledger`; returns the ledger index or nullopt.
inline std::optional<std::size_t> place_one(std::vector<LedgerEntry>& ledger, int demand, Tolerance tolerance,
                                            Approach approach) {
  for (std::size_t d = 0; d < ledger.size(); ++d) {
    LedgerEntry& e = ledger[d];
    if (e.residual >= demand && admissible(tolerance, e.tier, approach)) {
      e.residual -= demand;
      e.placed_demand += demand;
      ++e.placed_users;
      return d;
    }
  }
  return std::nullopt;
}

}  // namespace detail

}  // namespace mtcs
