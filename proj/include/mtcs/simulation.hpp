#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mtcs/geometry.hpp"
#include "mtcs/network.hpp"
#include "mtcs/scenario.hpp"
#include "mtcs/switching.hpp"

namespace mtcs {

/// Independent generators derived from one master seed. Each stream is seeded
/// from (seed, stream name), so adding a consumer never shifts the others.
struct RngStreams {
  std::mt19937_64 placement;
  std::mt19937_64 mobility;
  std::mt19937_64 demand;

  static RngStreams from_seed(std::uint64_t seed);
};

std::mt19937_64 named_stream(std::uint64_t seed, std::string_view name);

std::vector<User> spawn_users(int density, const ScenarioConfig& config, std::mt19937_64& rng);

/// Random-waypoint step: move toward the waypoint at the class speed for one
/// slot; on arrival draw a fresh uniform waypoint.
std::vector<User> step_mobility(std::vector<User> users, const Area& area, double slot_duration_s,
                                std::mt19937_64& rng);

std::vector<int> draw_demands(std::span<const User> users, DemandRange range, std::mt19937_64& rng);

/// Counts indexed by [tolerance][destination tier].
struct DissatisfactionCounts {
  std::array<std::array<int, kTierCount>, kToleranceCount> counts{};

  int total() const;
  int at_tier(TierId tier) const;
  int at(Tolerance tol, TierId tier) const { return counts[index_of(tol)][index_of(tier)]; }
  bool operator==(const DissatisfactionCounts&) const = default;
};

DissatisfactionCounts dissatisfaction_counts(const Placement& placement);

struct SlotRecord {
  int slot = 0;
  double strategy_power_w = 0.0;
  double a3_power_w = 0.0;
  double terrestrial_w = 0.0;
  double ntn_dynamic_w = 0.0;
  double uav_static_w = 0.0;
  std::vector<bool> on_off;
  DissatisfactionCounts dissatisfied;
  std::array<int, kTierCount> offloaded_demand{};  // by destination tier
  int offloaded_users = 0;
  int total_demand = 0;
  int served_demand = 0;  // kept by ON SBSs (or never switchable)
  double min_residual = 0.0;  // smallest ledger residual after placement
  double mean_sbs_raw_load = 0.0;

  bool operator==(const SlotRecord&) const = default;
};

/// Produces the per-slot snapshots of one (config, density, seed) run:
/// mobility, demand draw, then association over all SBSs.
class SnapshotStream {
 public:
  SnapshotStream(const ScenarioConfig& config, int density, std::uint64_t seed);
  Snapshot next();

 private:
  const ScenarioConfig& config_;
  std::vector<BaseStation> sbs_;
  RngStreams rng_;
  std::vector<User> users_;
};

SlotRecord make_slot_record(int slot, const Network& net, const Snapshot& snap, const SwitchDecision& decision,
                            double a3_power_w);

/// Simulates config.slot_count slots. Throws ScenarioError{validation} when
/// the config is invalid; strategy errors propagate.
std::vector<SlotRecord> run(const ScenarioConfig& config, int density, std::uint64_t seed, Approach approach,
                            Strategy strategy);

/// 100 * (sum a3 - sum strategy) / sum a3, summed in slot order.
double cumulative_gain(std::span<const SlotRecord> records);

/// Empty when every per-slot invariant holds.
std::vector<std::string> check_slot_invariants(const SlotRecord& record, Approach approach);

// ---------------------------------------------------------------------------
// Sweeps

struct TierScenario {
  std::string label;
  TierSet tiers;
  bool operator==(const TierScenario&) const = default;
};

/// (i) Tier-I; (ii) I+III; (iii) I+II+III; (iv) I+III+IV; (v) all tiers.
const std::vector<TierScenario>& case_study_scenarios();
const TierScenario* find_scenario(std::string_view label);

struct SweepPlan {
  std::vector<TierScenario> scenarios;
  std::vector<int> densities;
  std::vector<std::uint64_t> seeds;
  std::vector<Approach> approaches;
  std::vector<Strategy> strategies;
  int jobs = 1;
  bool keep_records = false;
};

/// All five scenarios, both approaches, config.strategy, config densities/seeds.
SweepPlan default_plan(const ScenarioConfig& config);

struct SweepRow {
  std::string scenario;
  int density = 0;
  std::uint64_t seed = 0;
  Approach approach = Approach::energy_focused;
  Strategy strategy = Strategy::es;
  double gain_percent = 0.0;
  long total_dissatisfied = 0;
  double mean_dissatisfied_per_slot = 0.0;
  std::array<long, kTierCount> dissatisfied_by_tier{};
  double mean_sbs_raw_load = 0.0;
  std::vector<SlotRecord> records;  // filled when keep_records

  bool operator==(const SweepRow&) const = default;
};

struct SweepCell {
  std::string scenario;
  int density = 0;
  Approach approach = Approach::energy_focused;
  Strategy strategy = Strategy::es;
  int seed_count = 0;
  double gain_mean = 0.0;
  double gain_std = 0.0;
  double dissatisfied_mean = 0.0;  // per slot
  double dissatisfied_std = 0.0;
  double dissatisfied_total_mean = 0.0;  // whole run
  std::array<double, kTierCount> dissatisfied_by_tier_mean{};  // per slot
  double mean_sbs_raw_load = 0.0;

  bool operator==(const SweepCell&) const = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;    // (scenario, density, seed, approach, strategy) in plan order
  std::vector<SweepCell> cells;  // (scenario, density, approach, strategy), aggregated over seeds
};

SweepResult sweep(const ScenarioConfig& config, const SweepPlan& plan);
SweepResult sweep(const ScenarioConfig& config);

}  // namespace mtcs
