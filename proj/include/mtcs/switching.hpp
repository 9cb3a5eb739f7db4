#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mtcs/geometry.hpp"
#include "mtcs/network.hpp"
#include "mtcs/offload.hpp"
#include "mtcs/power.hpp"

namespace mtcs {

/// Users with this slot's demands and association. `offload_order` lists user
/// indices in offload_before order; make_snapshot fills it.
struct Snapshot {
  std::vector<User> users;
  Assignment assignment;
  std::vector<std::uint32_t> offload_order;
};

Snapshot make_snapshot(std::vector<User> users, Assignment assignment);

struct SwitchDecision {
  std::vector<bool> on_off;  // net.sbs order; the MBS is never switched
  Placement placement;
  NetworkPowerBreakdown power;
  bool feasible = true;
};

class SwitchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxExhaustiveSbs = 20;

enum class EsKernel {
  reference,  // plain enumeration through place_users / network_power_w
  gray_code,  // Gray-code walk with incremental demand pruning
  parallel,   // OpenMP over vectors, reduced by the decision order
};

SwitchDecision a3(const Network& net, const Snapshot& snap, Approach approach = Approach::energy_focused);

/// Minimum-power feasible ON/OFF vector over all 2^n vectors. Ties go to
/// fewer active SBSs, then to the lexicographically smallest vector with
/// OFF < ON. Throws SwitchError above kMaxExhaustiveSbs SBSs.
SwitchDecision es_switch(const Network& net, const Snapshot& snap, Approach approach,
                         EsKernel kernel = EsKernel::gray_code);

/// Switches SBSs off in ascending load order until the next one cannot be
/// placed; returns the lowest-power vector seen along that walk (all-ON
/// included), ranked like es_switch.
SwitchDecision greedy_switch(const Network& net, const Snapshot& snap, Approach approach);

SwitchDecision decide(Strategy strategy, const Network& net, const Snapshot& snap, Approach approach);

/// The decision order: lower power, then fewer active SBSs, then
/// lexicographically smaller vector (index 0 first, OFF < ON).
bool decision_precedes(double power_a, const std::vector<bool>& a, double power_b, const std::vector<bool>& b);

}  // namespace mtcs
