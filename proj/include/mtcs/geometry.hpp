#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mtcs/scenario.hpp"

namespace mtcs {

struct User {
  int id = 0;
  Vec2 position;
  Vec2 waypoint;
  double speed_mps = 0.0;
  Mobility mobility = Mobility::pedestrian;
  Tolerance tolerance = Tolerance::tolerant;
  int demand = 0;
  int server = -1;  // station id after association

  bool operator==(const User&) const = default;
};

double distance_m(Vec2 a, Vec2 b);

/// Free-space path loss in dB; distances below 1 m are clamped to 1 m.
double fspl_db(double distance_m, double freq_mhz);

double tx_power_dbm(const PowerProfile& profile);
double received_power_dbm(const BaseStation& bs, Vec2 user_pos);

struct StationLoad {
  int station_id = 0;
  double capacity = 0.0;
  int assigned_demand = 0;
  int assigned_users = 0;
  bool operator==(const StationLoad&) const = default;
};

/// User-to-server map plus per-station demand aggregates. Initial association
/// may overload a station (raw ratio > 1).
struct Assignment {
  std::vector<std::pair<int, int>> server;  // (user id, station id), sorted by user id
  std::vector<StationLoad> loads;           // sorted by station id

  int server_of(int user_id) const;         // -1 when unknown
  int assigned_demand(int station_id) const;  // 0 when absent
  StationLoad* find_load(int station_id);
  const StationLoad* find_load(int station_id) const;
  bool operator==(const Assignment&) const = default;
};

/// Assigns each user to the candidate with the strongest received power
/// (ties go to the smaller station id). Candidates must be Tier-I SBSs.
Assignment associate(std::span<const User> users, std::span<const BaseStation> candidates);

struct LoadFraction {
  double load = 0.0;  // clamped to [0, 1]
  double raw = 0.0;   // assigned demand / capacity
};

LoadFraction bs_load(const Assignment& assignment, const BaseStation& station);

}  // namespace mtcs
