#pragma once

// Independent exhaustive-search oracle: plain recursion over ON/OFF choices,
// its own first-fit-decreasing placement and its own EARTH arithmetic. Only
// plain data (stations, users, assigned demand) is taken from the library.
// Totals are accumulated in the documented order (stations by ascending id;
// grand = terrestrial + ntn_dynamic + uav_static) so powers compare exactly.

#include <algorithm>
#include <vector>

#include "mtcs/network.hpp"
#include "mtcs/switching.hpp"

namespace oracle {

struct Result {
  bool found = false;
  std::vector<bool> on_off;
  double power = 0.0;
};

inline bool rejects(mtcs::Tolerance tol, mtcs::TierId tier) {
  using mtcs::TierId;
  using mtcs::Tolerance;
  if (tol == Tolerance::intolerant) return tier == TierId::TierIII_HAPS || tier == TierId::TierIV_SAT;
  if (tol == Tolerance::mid_tolerant) return tier == TierId::TierIV_SAT;
  return false;
}

class EsOracle {
 public:
  EsOracle(const mtcs::Network& net, const mtcs::Snapshot& snap, mtcs::Approach approach)
      : net_(net), snap_(snap), approach_(approach) {
    using mtcs::TierId;
    const std::vector<TierId> order = approach == mtcs::Approach::energy_focused
                                          ? std::vector<TierId>{TierId::TierI_MBS, TierId::TierIII_HAPS,
                                                                TierId::TierIV_SAT, TierId::TierII_UAV}
                                          : std::vector<TierId>{TierId::TierI_MBS, TierId::TierII_UAV,
                                                                TierId::TierIII_HAPS, TierId::TierIV_SAT};
    for (TierId t : order)
      for (const auto& bs : net.stations)
        if (bs.tier == t) {
          int pre = 0;
          for (const auto& l : snap.assignment.loads)
            if (l.station_id == bs.id) pre = l.assigned_demand;
          dests_.push_back({bs.id, t, std::max(0.0, bs.capacity * bs.availability_fraction - pre)});
        }
  }

  Result solve() {
    std::vector<bool> on(net_.sbs.size());
    recurse(on, 0);
    return best_;
  }

 private:
  struct Dest {
    int id;
    mtcs::TierId tier;
    double residual;
  };

  void recurse(std::vector<bool>& on, std::size_t k) {
    if (k == on.size()) {
      evaluate(on);
      return;
    }
    on[k] = false;
    recurse(on, k + 1);
    on[k] = true;
    recurse(on, k + 1);
  }

  int sbs_position(int station_id) const {
    for (std::size_t k = 0; k < net_.sbs.size(); ++k)
      if (net_.stations[net_.sbs[k]].id == station_id) return static_cast<int>(k);
    return -1;
  }

  void evaluate(const std::vector<bool>& on) {
    std::vector<const mtcs::User*> moving;
    for (const auto& u : snap_.users) {
      const int k = sbs_position(u.server);
      if (k >= 0 && !on[static_cast<std::size_t>(k)]) moving.push_back(&u);
    }
    std::sort(moving.begin(), moving.end(), [](const mtcs::User* a, const mtcs::User* b) {
      return a->demand != b->demand ? a->demand > b->demand : a->id < b->id;
    });
    std::vector<Dest> dests = dests_;
    std::vector<int> placed(dests.size(), 0);
    std::vector<int> users(dests.size(), 0);
    for (const mtcs::User* u : moving) {
      bool ok = false;
      for (std::size_t d = 0; d < dests.size() && !ok; ++d) {
        if (dests[d].residual < u->demand) continue;
        if (approach_ == mtcs::Approach::delay_focused && rejects(u->tolerance, dests[d].tier)) continue;
        dests[d].residual -= u->demand;
        placed[d] += u->demand;
        ++users[d];
        ok = true;
      }
      if (!ok) return;
    }

    double terrestrial = 0.0, dynamic = 0.0, fixed = 0.0;
    for (const auto& bs : net_.stations) {
      const auto& p = bs.profile;
      int dest = -1;
      for (std::size_t d = 0; d < dests.size(); ++d)
        if (dests[d].id == bs.id) dest = static_cast<int>(d);
      int assigned = 0;
      for (const auto& l : snap_.assignment.loads)
        if (l.station_id == bs.id) assigned = l.assigned_demand;

      if (bs.tier == mtcs::TierId::TierI_SBS) {
        if (on[static_cast<std::size_t>(sbs_position(bs.id))]) {
          const double load = assigned == 0 ? 0.0 : std::min(1.0, assigned / bs.capacity);
          terrestrial += p.n_trx * (p.p0_static_w + p.delta_p * p.p_max_tx_w * load);
        } else {
          terrestrial += p.n_trx * p.p_sleep_w;
        }
      } else if (bs.tier == mtcs::TierId::TierI_MBS) {
        const int demand = assigned + (dest >= 0 ? placed[static_cast<std::size_t>(dest)] : 0);
        terrestrial += p.n_trx * (p.p0_static_w + p.delta_p * p.p_max_tx_w * std::min(1.0, demand / bs.capacity));
      } else if (net_.ntn.count_ntn_power && dest >= 0) {
        dynamic += net_.ntn.dynamic_w_per_unit.for_tier(bs.tier) * placed[static_cast<std::size_t>(dest)];
        fixed += (bs.tier == mtcs::TierId::TierII_UAV && users[static_cast<std::size_t>(dest)] > 0)
                     ? net_.ntn.uav_static_w
                     : 0.0;
      }
    }
    const double power = terrestrial + dynamic + fixed;

    const auto active = std::count(on.begin(), on.end(), true);
    bool better = !best_.found || power < best_.power;
    if (best_.found && power == best_.power) {
      const auto best_active = std::count(best_.on_off.begin(), best_.on_off.end(), true);
      better = active < best_active || (active == best_active && on < best_.on_off);
    }
    if (better) best_ = {true, on, power};
  }

  const mtcs::Network& net_;
  const mtcs::Snapshot& snap_;
  mtcs::Approach approach_;
  std::vector<Dest> dests_;
  Result best_;
};

}  // namespace oracle
