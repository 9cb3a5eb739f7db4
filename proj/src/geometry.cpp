#include "mtcs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtcs {

double distance_m(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double fspl_db(double distance_m, double freq_mhz) {
  if (!(freq_mhz > 0.0)) throw std::invalid_argument("fspl_db: frequency must be positive");
  const double d = std::max(distance_m, 1.0);
  return 20.0 * std::log10(d) + 20.0 * std::log10(freq_mhz) - 27.55;
}

double tx_power_dbm(const PowerProfile& profile) { return 10.0 * std::log10(profile.p_max_tx_w * 1000.0); }

double received_power_dbm(const BaseStation& bs, Vec2 user_pos) {
  return tx_power_dbm(bs.profile) - fspl_db(distance_m(bs.position, user_pos), bs.carrier_freq_mhz);
}

int Assignment::server_of(int user_id) const {
  auto it = std::lower_bound(server.begin(), server.end(), user_id,
                             [](const std::pair<int, int>& p, int id) { return p.first < id; });
  return (it != server.end() && it->first == user_id) ? it->second : -1;
}

StationLoad* Assignment::find_load(int station_id) {
  auto it = std::lower_bound(loads.begin(), loads.end(), station_id,
                             [](const StationLoad& l, int id) { return l.station_id < id; });
  return (it != loads.end() && it->station_id == station_id) ? &*it : nullptr;
}

const StationLoad* Assignment::find_load(int station_id) const {
  return const_cast<Assignment*>(this)->find_load(station_id);
}

int Assignment::assigned_demand(int station_id) const {
  const StationLoad* l = find_load(station_id);
  return l ? l->assigned_demand : 0;
}

Assignment associate(std::span<const User> users, std::span<const BaseStation> candidates) {
  if (candidates.empty()) throw std::invalid_argument("associate: no candidate stations");

  struct Candidate {
    int id;
    Vec2 pos;
    double link_budget_db;  // tx dBm minus the frequency part of the FSPL
  };
  std::vector<Candidate> cand;
  cand.reserve(candidates.size());
  for (const BaseStation& bs : candidates) {
    if (bs.tier != TierId::TierI_SBS)
      throw std::invalid_argument("associate: only Tier-I SBSs are association candidates");
    if (!(bs.carrier_freq_mhz > 0.0)) throw std::invalid_argument("associate: frequency must be positive");
    cand.push_back({bs.id, bs.position, tx_power_dbm(bs.profile) - 20.0 * std::log10(bs.carrier_freq_mhz) + 27.55});
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) { return a.id < b.id; });

  Assignment out;
  out.loads.reserve(cand.size());
  for (const BaseStation& bs : candidates) out.loads.push_back({bs.id, bs.capacity, 0, 0});
  std::sort(out.loads.begin(), out.loads.end(),
            [](const StationLoad& a, const StationLoad& b) { return a.station_id < b.station_id; });

  out.server.reserve(users.size());
  for (const User& u : users) {
    std::size_t best = 0;
    double best_rx = 0.0;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      const double dx = cand[k].pos.x - u.position.x;
      const double dy = cand[k].pos.y - u.position.y;
      // 20 log10(max(d, 1)) == 10 log10(max(d^2, 1))
      const double rx = cand[k].link_budget_db - 10.0 * std::log10(std::max(dx * dx + dy * dy, 1.0));
      if (k == 0 || rx > best_rx) {
        best = k;
        best_rx = rx;
      }
    }
    out.server.emplace_back(u.id, cand[best].id);
    StationLoad& load = out.loads[best];
    load.assigned_demand += u.demand;
    ++load.assigned_users;
  }
  std::sort(out.server.begin(), out.server.end());
  return out;
}

LoadFraction bs_load(const Assignment& assignment, const BaseStation& station) {
  const StationLoad* l = assignment.find_load(station.id);
  if (!l || l->assigned_demand == 0) return {0.0, 0.0};
  const double raw = l->assigned_demand / station.capacity;
  return {std::min(1.0, raw), raw};
}

}  // namespace mtcs
