#include "mtcs/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mtcs/scenario_json.hpp"

namespace mtcs {

using nlohmann::json;

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

std::string_view short_name(Approach a) { return a == Approach::energy_focused ? "energy" : "delay"; }

std::string series_name(const std::string& scenario, Approach a, Strategy s) {
  return scenario + "_" + std::string(short_name(a)) + "_" + std::string(to_string(s));
}

std::string on_off_string(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

// Cells of `result` keyed by (density, series), series in plan order.
struct CurveTable {
  std::vector<std::string> series;
  std::map<int, std::map<std::string, const SweepCell*>> by_density;
};

CurveTable curve_table(const SweepPlan& plan, const SweepResult& result) {
  CurveTable t;
  for (const TierScenario& sc : plan.scenarios)
    for (Approach a : plan.approaches)
      for (Strategy s : plan.strategies) t.series.push_back(series_name(sc.label, a, s));
  for (const SweepCell& c : result.cells)
    t.by_density[c.density][series_name(c.scenario, c.approach, c.strategy)] = &c;
  return t;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string slots_csv(const SweepResult& result) {
  std::ostringstream o;
  o << "scenario,density,seed,approach,strategy,slot,strategy_power_w,a3_power_w,terrestrial_w,"
       "ntn_dynamic_w,uav_static_w,active_sbs,on_off,offloaded_users,offloaded_mbs,offloaded_uav,"
       "offloaded_haps,offloaded_sat,total_demand,served_demand,dissatisfied_total,dissatisfied_haps,"
       "dissatisfied_sat,dissatisfied_intolerant,dissatisfied_mid_tolerant,min_residual,mean_sbs_raw_load\n";
  for (const SweepRow& row : result.rows) {
    for (const SlotRecord& r : row.records) {
      const auto& d = r.dissatisfied;
      int intolerant = 0;
      int mid = 0;
      for (TierId t : kAllTiers) {
        intolerant += d.at(Tolerance::intolerant, t);
        mid += d.at(Tolerance::mid_tolerant, t);
      }
      o << row.scenario << ',' << row.density << ',' << row.seed << ',' << short_name(row.approach) << ','
        << to_string(row.strategy) << ',' << r.slot << ',' << format_number(r.strategy_power_w) << ','
        << format_number(r.a3_power_w) << ',' << format_number(r.terrestrial_w) << ','
        << format_number(r.ntn_dynamic_w) << ',' << format_number(r.uav_static_w) << ','
        << std::count(r.on_off.begin(), r.on_off.end(), true) << ',' << on_off_string(r.on_off) << ','
        << r.offloaded_users << ',' << r.offloaded_demand[index_of(TierId::TierI_MBS)] << ','
        << r.offloaded_demand[index_of(TierId::TierII_UAV)] << ','
        << r.offloaded_demand[index_of(TierId::TierIII_HAPS)] << ','
        << r.offloaded_demand[index_of(TierId::TierIV_SAT)] << ',' << r.total_demand << ',' << r.served_demand
        << ',' << d.total() << ',' << d.at_tier(TierId::TierIII_HAPS) << ',' << d.at_tier(TierId::TierIV_SAT)
        << ',' << intolerant << ',' << mid << ',' << format_number(r.min_residual) << ','
        << format_number(r.mean_sbs_raw_load) << '\n';
    }
  }
  return o.str();
}

std::string gain_curve_csv(const SweepPlan& plan, const SweepResult& result) {
  const CurveTable t = curve_table(plan, result);
  std::ostringstream o;
  o << "density";
  for (const auto& s : t.series) o << ',' << s << "_mean," << s << "_std";
  o << '\n';
  for (const auto& [density, cells] : t.by_density) {
    o << density;
    for (const auto& s : t.series) {
      auto it = cells.find(s);
      if (it == cells.end()) {
        o << ",,";
        continue;
      }
      o << ',' << format_number(it->second->gain_mean) << ',' << format_number(it->second->gain_std);
    }
    o << '\n';
  }
  return o.str();
}

std::string dissatisfaction_curve_csv(const SweepPlan& plan, const SweepResult& result) {
  const CurveTable t = curve_table(plan, result);
  std::ostringstream o;
  o << "density";
  for (const auto& s : t.series) o << ',' << s << "_tier3," << s << "_tier4," << s << "_total," << s << "_cumulative";
  o << '\n';
  for (const auto& [density, cells] : t.by_density) {
    o << density;
    for (const auto& s : t.series) {
      auto it = cells.find(s);
      if (it == cells.end()) {
        o << ",,,,";
        continue;
      }
      const SweepCell& c = *it->second;
      o << ',' << format_number(c.dissatisfied_by_tier_mean[index_of(TierId::TierIII_HAPS)]) << ','
        << format_number(c.dissatisfied_by_tier_mean[index_of(TierId::TierIV_SAT)]) << ','
        << format_number(c.dissatisfied_mean) << ',' << format_number(c.dissatisfied_total_mean);
    }
    o << '\n';
  }
  return o.str();
}

json summary_json(std::string_view command, const ScenarioConfig& config, const SweepPlan& plan,
                  const SweepResult& result) {
  json scenarios = json::array();
  for (const TierScenario& s : plan.scenarios) {
    json tiers = json::array();
    for (TierId t : s.tiers.tiers()) tiers.push_back(to_string(t));
    scenarios.push_back({{"label", s.label}, {"tier_set", std::move(tiers)}});
  }
  json approaches = json::array();
  for (Approach a : plan.approaches) approaches.push_back(to_string(a));
  json strategies = json::array();
  for (Strategy s : plan.strategies) strategies.push_back(to_string(s));

  json rows = json::array();
  for (const SweepRow& r : result.rows) {
    rows.push_back({{"scenario", r.scenario},
                    {"density", r.density},
                    {"seed", r.seed},
                    {"approach", to_string(r.approach)},
                    {"strategy", to_string(r.strategy)},
                    {"gain_percent", r.gain_percent},
                    {"total_dissatisfied", r.total_dissatisfied},
                    {"mean_dissatisfied_per_slot", r.mean_dissatisfied_per_slot},
                    {"dissatisfied_haps", r.dissatisfied_by_tier[index_of(TierId::TierIII_HAPS)]},
                    {"dissatisfied_sat", r.dissatisfied_by_tier[index_of(TierId::TierIV_SAT)]},
                    {"mean_sbs_raw_load", r.mean_sbs_raw_load}});
  }
  json cells = json::array();
  for (const SweepCell& c : result.cells) {
    cells.push_back({{"scenario", c.scenario},
                     {"density", c.density},
                     {"approach", to_string(c.approach)},
                     {"strategy", to_string(c.strategy)},
                     {"seed_count", c.seed_count},
                     {"gain_mean", c.gain_mean},
                     {"gain_std", c.gain_std},
                     {"dissatisfied_mean", c.dissatisfied_mean},
                     {"dissatisfied_std", c.dissatisfied_std},
                     {"dissatisfied_total_mean", c.dissatisfied_total_mean},
                     {"dissatisfied_haps_mean", c.dissatisfied_by_tier_mean[index_of(TierId::TierIII_HAPS)]},
                     {"dissatisfied_sat_mean", c.dissatisfied_by_tier_mean[index_of(TierId::TierIV_SAT)]},
                     {"mean_sbs_raw_load", c.mean_sbs_raw_load}});
  }

  return {{"tool", "mtcs"},
          {"version", kToolVersion},
          {"command", command},
          {"master_seeds", plan.seeds},
          {"config", scenario_to_json(config)},
          {"plan",
           {{"scenarios", std::move(scenarios)},
            {"densities", plan.densities},
            {"seeds", plan.seeds},
            {"approaches", std::move(approaches)},
            {"strategies", std::move(strategies)}}},
          {"rows", std::move(rows)},
          {"cells", std::move(cells)}};
}

void write_bundle(const std::filesystem::path& dir, std::string_view command, const ScenarioConfig& config,
                  const SweepPlan& plan, const SweepResult& result, bool with_slots) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  if (with_slots) write_file(dir / "slots.csv", slots_csv(result));
  write_file(dir / "summary.json", summary_json(command, config, plan, result).dump(2) + "\n");
  write_file(dir / "gain_curve.csv", gain_curve_csv(plan, result));
  write_file(dir / "dissatisfaction_curve.csv", dissatisfaction_curve_csv(plan, result));
}

}  // namespace mtcs
