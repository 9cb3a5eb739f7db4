#include "mtcs/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include <omp.h>

namespace mtcs {

// ---------------------------------------------------------------------------
// Random streams

std::mt19937_64 named_stream(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

RngStreams RngStreams::from_seed(std::uint64_t seed) {
  return {named_stream(seed, "placement"), named_stream(seed, "mobility"), named_stream(seed, "demand")};
}

// ---------------------------------------------------------------------------
// Users

std::vector<User> spawn_users(int density, const ScenarioConfig& config, std::mt19937_64& rng) {
  if (density < 1) throw std::invalid_argument("spawn_users: density must be >= 1");
  std::uniform_real_distribution<double> ux(0.0, config.area_m.width);
  std::uniform_real_distribution<double> uy(0.0, config.area_m.height);
  std::vector<double> weights;
  for (const UserClassSpec& c : config.class_mix) weights.push_back(c.mix_weight);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

  std::vector<User> users(static_cast<std::size_t>(density));
  for (int i = 0; i < density; ++i) {
    User& u = users[static_cast<std::size_t>(i)];
    u.id = i;
    u.position.x = ux(rng);
    u.position.y = uy(rng);
    const UserClassSpec& cls = config.class_mix[pick(rng)];
    u.mobility = cls.mobility;
    u.tolerance = cls.tolerance;
    u.speed_mps = cls.speed_mps;
    // Standing on the waypoint: the first mobility step draws a real one.
    u.waypoint = u.position;
  }
  return users;
}

std::vector<User> step_mobility(std::vector<User> users, const Area& area, double slot_duration_s,
                                std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(0.0, area.width);
  std::uniform_real_distribution<double> uy(0.0, area.height);
  auto draw = [&] { return Vec2{ux(rng), uy(rng)}; };

  for (User& u : users) {
    if (!(u.speed_mps > 0.0)) continue;
    if (u.position == u.waypoint) u.waypoint = draw();
    const double reach = u.speed_mps * slot_duration_s;
    const double d = distance_m(u.position, u.waypoint);
    if (reach >= d) {
      u.position = u.waypoint;
      u.waypoint = draw();
    } else {
      const double t = reach / d;
      u.position.x = std::clamp(u.position.x + (u.waypoint.x - u.position.x) * t, 0.0, area.width);
      u.position.y = std::clamp(u.position.y + (u.waypoint.y - u.position.y) * t, 0.0, area.height);
    }
  }
  return users;
}

std::vector<int> draw_demands(std::span<const User> users, DemandRange range, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(range.min, range.max);
  std::vector<int> out(users.size());
  for (int& d : out) d = dist(rng);
  return out;
}

// ---------------------------------------------------------------------------
// Metrics

int DissatisfactionCounts::total() const {
  int sum = 0;
  for (const auto& row : counts) sum += std::accumulate(row.begin(), row.end(), 0);
  return sum;
}

int DissatisfactionCounts::at_tier(TierId tier) const {
  int sum = 0;
  for (const auto& row : counts) sum += row[index_of(tier)];
  return sum;
}

DissatisfactionCounts dissatisfaction_counts(const Placement& placement) {
  DissatisfactionCounts out;
  for (const PlacedUser& u : placement.users)
    if (violates_tolerance(u.tolerance, u.tier)) ++out.counts[index_of(u.tolerance)][index_of(u.tier)];
  return out;
}

namespace {

double gain_from_sums(double a3_sum, double strategy_sum) {
  if (!(a3_sum > 0.0)) return 0.0;
  return 100.0 * (a3_sum - strategy_sum) / a3_sum;
}

}  // namespace

double cumulative_gain(std::span<const SlotRecord> records) {
  if (records.empty()) throw std::invalid_argument("cumulative_gain: no slot records");
  double a3_sum = 0.0;
  double strategy_sum = 0.0;
  for (const SlotRecord& r : records) {
    a3_sum += r.a3_power_w;
    strategy_sum += r.strategy_power_w;
  }
  return gain_from_sums(a3_sum, strategy_sum);
}

SlotRecord make_slot_record(int slot, const Network& net, const Snapshot& snap, const SwitchDecision& decision,
                            double a3_power_w) {
  SlotRecord r;
  r.slot = slot;
  r.strategy_power_w = decision.power.grand_total;
  r.a3_power_w = a3_power_w;
  r.terrestrial_w = decision.power.terrestrial_total;
  r.ntn_dynamic_w = decision.power.ntn_dynamic_total;
  r.uav_static_w = decision.power.uav_static_total;
  r.on_off = decision.on_off;
  r.dissatisfied = dissatisfaction_counts(decision.placement);
  for (const LedgerEntry& e : decision.placement.ledger) r.offloaded_demand[index_of(e.tier)] += e.placed_demand;
  r.offloaded_users = static_cast<int>(decision.placement.users.size());

  r.min_residual = std::numeric_limits<double>::infinity();
  for (const LedgerEntry& e : decision.placement.ledger) r.min_residual = std::min(r.min_residual, e.residual);
  if (decision.placement.ledger.empty()) r.min_residual = 0.0;

  for (const User& u : snap.users) {
    r.total_demand += u.demand;
    bool kept = true;
    for (std::size_t k = 0; k < net.sbs.size(); ++k)
      if (net.stations[net.sbs[k]].id == u.server) kept = decision.on_off[k];
    if (kept) r.served_demand += u.demand;
  }

  double raw = 0.0;
  for (std::size_t k : net.sbs) raw += bs_load(snap.assignment, net.stations[k]).raw;
  r.mean_sbs_raw_load = raw / static_cast<double>(net.sbs.size());
  return r;
}

std::vector<std::string> check_slot_invariants(const SlotRecord& r, Approach approach) {
  std::vector<std::string> v;
  const std::string at = "slot " + std::to_string(r.slot) + ": ";
  const int offloaded = std::accumulate(r.offloaded_demand.begin(), r.offloaded_demand.end(), 0);
  if (r.served_demand + offloaded != r.total_demand) v.push_back(at + "demand not conserved");
  if (r.min_residual < 0.0) v.push_back(at + "negative capacity ledger");
  const double parts = r.terrestrial_w + r.ntn_dynamic_w + r.uav_static_w;
  if (std::abs(r.strategy_power_w - parts) > 1e-9 * std::abs(r.strategy_power_w))
    v.push_back(at + "power breakdown does not add up");
  if (r.strategy_power_w > r.a3_power_w) v.push_back(at + "strategy power exceeds A3");
  if (approach == Approach::delay_focused && r.dissatisfied.total() != 0)
    v.push_back(at + "dissatisfied users under delay_focused");
  return v;
}

// ---------------------------------------------------------------------------
// Runs

SnapshotStream::SnapshotStream(const ScenarioConfig& config, int density, std::uint64_t seed)
    : config_(config), rng_(RngStreams::from_seed(seed)) {
  for (const BaseStation& bs : config.stations)
    if (bs.tier == TierId::TierI_SBS) sbs_.push_back(bs);
  users_ = spawn_users(density, config, rng_.placement);
}

Snapshot SnapshotStream::next() {
  users_ = step_mobility(std::move(users_), config_.area_m, config_.slot_duration_s, rng_.mobility);
  const auto demands = draw_demands(users_, config_.demand_range, rng_.demand);
  for (std::size_t i = 0; i < users_.size(); ++i) users_[i].demand = demands[i];
  Assignment assignment = associate(users_, sbs_);
  return make_snapshot(users_, std::move(assignment));
}

namespace {

void require_valid(const ScenarioConfig& config) {
  auto violations = validate(config);
  if (violations.empty()) return;
  std::string msg = "invalid scenario:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw ScenarioError(ScenarioError::Kind::validation, msg, std::move(violations));
}

}  // namespace

std::vector<SlotRecord> run(const ScenarioConfig& config, int density, std::uint64_t seed, Approach approach,
                            Strategy strategy) {
  require_valid(config);
  if (density < 1) throw std::invalid_argument("run: density must be >= 1");
  const Network net = build_network(config);
  SnapshotStream stream(config, density, seed);

  std::vector<SlotRecord> records;
  records.reserve(static_cast<std::size_t>(config.slot_count));
  for (int slot = 0; slot < config.slot_count; ++slot) {
    const Snapshot snap = stream.next();
    const SwitchDecision decision = decide(strategy, net, snap, approach);
    const double a3_power =
        strategy == Strategy::a3 ? decision.power.grand_total : a3(net, snap, approach).power.grand_total;
    records.push_back(make_slot_record(slot, net, snap, decision, a3_power));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Sweeps

const std::vector<TierScenario>& case_study_scenarios() {
  using T = TierId;
  static const std::vector<TierScenario> scenarios{
      {"i", {T::TierI_SBS, T::TierI_MBS}},
      {"ii", {T::TierI_SBS, T::TierI_MBS, T::TierIII_HAPS}},
      {"iii", {T::TierI_SBS, T::TierI_MBS, T::TierII_UAV, T::TierIII_HAPS}},
      {"iv", {T::TierI_SBS, T::TierI_MBS, T::TierIII_HAPS, T::TierIV_SAT}},
      {"v", TierSet::all()},
  };
  return scenarios;
}

const TierScenario* find_scenario(std::string_view label) {
  for (const TierScenario& s : case_study_scenarios())
    if (s.label == label) return &s;
  return nullptr;
}

SweepPlan default_plan(const ScenarioConfig& config) {
  SweepPlan plan;
  plan.scenarios = case_study_scenarios();
  plan.densities = config.user_densities;
  plan.seeds = config.seeds;
  plan.approaches = {Approach::energy_focused, Approach::delay_focused};
  plan.strategies = {config.strategy};
  return plan;
}

SweepResult sweep(const ScenarioConfig& config) { return sweep(config, default_plan(config)); }

SweepResult sweep(const ScenarioConfig& config, const SweepPlan& plan) {
  require_valid(config);
  for (int d : plan.densities)
    if (d < 1) throw std::invalid_argument("sweep: every density must be >= 1");

  std::vector<Network> nets;
  for (const TierScenario& s : plan.scenarios) {
    ScenarioConfig scoped = config;
    scoped.tier_set = s.tiers;
    nets.push_back(build_network(scoped));
  }

  const std::size_t n_scen = plan.scenarios.size();
  const std::size_t n_dens = plan.densities.size();
  const std::size_t n_seed = plan.seeds.size();
  const std::size_t n_appr = plan.approaches.size();
  const std::size_t n_strat = plan.strategies.size();
  auto row_index = [&](std::size_t s, std::size_t d, std::size_t e, std::size_t a, std::size_t t) {
    return (((s * n_dens + d) * n_seed + e) * n_appr + a) * n_strat + t;
  };

  SweepResult result;
  result.rows.resize(n_scen * n_dens * n_seed * n_appr * n_strat);

  // One task per (density, seed): the snapshot sequence is shared by every
  // scenario/approach/strategy combination evaluated on it.
  const long tasks = static_cast<long>(n_dens * n_seed);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(tasks));

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, plan.jobs))
  for (long task = 0; task < tasks; ++task) {
    try {
      const std::size_t d = static_cast<std::size_t>(task) / n_seed;
      const std::size_t e = static_cast<std::size_t>(task) % n_seed;
      struct Acc {
        double a3_sum = 0.0;
        double strategy_sum = 0.0;
        long dissatisfied = 0;
        std::array<long, kTierCount> by_tier{};
        double raw_load_sum = 0.0;
        std::vector<SlotRecord> records;
      };
      std::vector<Acc> acc(n_scen * n_appr * n_strat);

      SnapshotStream stream(config, plan.densities[d], plan.seeds[e]);
      for (int slot = 0; slot < config.slot_count; ++slot) {
        const Snapshot snap = stream.next();
        for (std::size_t s = 0; s < n_scen; ++s) {
          const double a3_power = a3(nets[s], snap).power.grand_total;
          for (std::size_t a = 0; a < n_appr; ++a) {
            for (std::size_t t = 0; t < n_strat; ++t) {
              const SwitchDecision decision = decide(plan.strategies[t], nets[s], snap, plan.approaches[a]);
              SlotRecord rec = make_slot_record(slot, nets[s], snap, decision, a3_power);
              Acc& x = acc[(s * n_appr + a) * n_strat + t];
              x.a3_sum += rec.a3_power_w;
              x.strategy_sum += rec.strategy_power_w;
              x.dissatisfied += rec.dissatisfied.total();
              for (TierId tier : kAllTiers) x.by_tier[index_of(tier)] += rec.dissatisfied.at_tier(tier);
              x.raw_load_sum += rec.mean_sbs_raw_load;
              if (plan.keep_records) x.records.push_back(std::move(rec));
            }
          }
        }
      }

      const double slots = static_cast<double>(config.slot_count);
      for (std::size_t s = 0; s < n_scen; ++s)
        for (std::size_t a = 0; a < n_appr; ++a)
          for (std::size_t t = 0; t < n_strat; ++t) {
            Acc& x = acc[(s * n_appr + a) * n_strat + t];
            SweepRow& row = result.rows[row_index(s, d, e, a, t)];
            row.scenario = plan.scenarios[s].label;
            row.density = plan.densities[d];
            row.seed = plan.seeds[e];
            row.approach = plan.approaches[a];
            row.strategy = plan.strategies[t];
            row.gain_percent = gain_from_sums(x.a3_sum, x.strategy_sum);
            row.total_dissatisfied = x.dissatisfied;
            row.mean_dissatisfied_per_slot = static_cast<double>(x.dissatisfied) / slots;
            row.dissatisfied_by_tier = x.by_tier;
            row.mean_sbs_raw_load = x.raw_load_sum / slots;
            row.records = std::move(x.records);
          }
    } catch (...) {
      errors[static_cast<std::size_t>(task)] = std::current_exception();
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  const double slots = static_cast<double>(config.slot_count);
  for (std::size_t s = 0; s < n_scen; ++s)
    for (std::size_t d = 0; d < n_dens; ++d)
      for (std::size_t a = 0; a < n_appr; ++a)
        for (std::size_t t = 0; t < n_strat; ++t) {
          SweepCell cell;
          cell.scenario = plan.scenarios[s].label;
          cell.density = plan.densities[d];
          cell.approach = plan.approaches[a];
          cell.strategy = plan.strategies[t];
          cell.seed_count = static_cast<int>(n_seed);
          double gain_sum = 0.0, dis_sum = 0.0, total_sum = 0.0, load_sum = 0.0;
          std::array<double, kTierCount> tier_sum{};
          for (std::size_t e = 0; e < n_seed; ++e) {
            const SweepRow& row = result.rows[row_index(s, d, e, a, t)];
            gain_sum += row.gain_percent;
            dis_sum += row.mean_dissatisfied_per_slot;
            total_sum += static_cast<double>(row.total_dissatisfied);
            load_sum += row.mean_sbs_raw_load;
            for (std::size_t k = 0; k < kTierCount; ++k)
              tier_sum[k] += static_cast<double>(row.dissatisfied_by_tier[k]) / slots;
          }
          const double n = static_cast<double>(n_seed);
          cell.gain_mean = gain_sum / n;
          cell.dissatisfied_mean = dis_sum / n;
          cell.dissatisfied_total_mean = total_sum / n;
          cell.mean_sbs_raw_load = load_sum / n;
          for (std::size_t k = 0; k < kTierCount; ++k) cell.dissatisfied_by_tier_mean[k] = tier_sum[k] / n;
          if (n_seed > 1) {
            double g2 = 0.0, d2 = 0.0;
            for (std::size_t e = 0; e < n_seed; ++e) {
              const SweepRow& row = result.rows[row_index(s, d, e, a, t)];
              g2 += (row.gain_percent - cell.gain_mean) * (row.gain_percent - cell.gain_mean);
              d2 += (row.mean_dissatisfied_per_slot - cell.dissatisfied_mean) *
                    (row.mean_dissatisfied_per_slot - cell.dissatisfied_mean);
            }
            cell.gain_std = std::sqrt(g2 / (n - 1.0));
            cell.dissatisfied_std = std::sqrt(d2 / (n - 1.0));
          }
          result.cells.push_back(std::move(cell));
        }
  return result;
}

}  // namespace mtcs
