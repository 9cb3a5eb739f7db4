// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <tuple>

#include <omp.h>

#include "es_oracle.hpp"
#include "mtcs/simulation.hpp"
#include "mtcs/switching.hpp"
#include "random_instances.hpp"

using namespace mtcs;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  int mismatches = 0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 200; ++i) {
    const testutil::Instance inst = testutil::random_instance(rng, 6, 120);
    const oracle::Result expected = oracle::EsOracle(inst.net, inst.snap, inst.approach).solve();
    const SwitchDecision got = es_switch(inst.net, inst.snap, inst.approach);
    if (!expected.found || got.on_off != expected.on_off || got.power.grand_total != expected.power) ++mismatches;
  }
  const double elapsed = seconds_since(t0);
  report(1, "ES oracle equivalence", mismatches == 0 && elapsed < 10.0,
         fmt("%.0f mismatches over 200 snapshots in %.2f s", mismatches, elapsed));
}

void strategy_ordering(const ScenarioConfig& base) {
  ScenarioConfig c = base;
  c.tier_set = TierSet::all();
  long slots = 0, violations = 0;
  for (Approach a : {Approach::energy_focused, Approach::delay_focused}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto es = run(c, 200, seed, a, Strategy::es);
      const auto greedy = run(c, 200, seed, a, Strategy::greedy);
      for (std::size_t s = 0; s < es.size(); ++s) {
        ++slots;
        const bool ok = es[s].strategy_power_w <= greedy[s].strategy_power_w &&
                        greedy[s].strategy_power_w <= es[s].a3_power_w &&
                        greedy[s].a3_power_w == es[s].a3_power_w;
        if (!ok) ++violations;
      }
    }
  }
  report(2, "strategy ordering es <= greedy <= a3", violations == 0,
         fmt("%.0f violations over %.0f slots (density 200, 5 seeds, both approaches)", violations, slots));
}

struct CellKey {
  std::string scenario;
  int density;
  Approach approach;
  auto operator<=>(const CellKey&) const = default;
};

std::map<CellKey, const SweepCell*> index_cells(const SweepResult& r) {
  std::map<CellKey, const SweepCell*> m;
  for (const SweepCell& c : r.cells) m[{c.scenario, c.density, c.approach}] = &c;
  return m;
}

std::map<std::tuple<std::string, int, std::uint64_t, Approach>, const SweepRow*> index_rows(const SweepResult& r) {
  std::map<std::tuple<std::string, int, std::uint64_t, Approach>, const SweepRow*> m;
  for (const SweepRow& row : r.rows) m[{row.scenario, row.density, row.seed, row.approach}] = &row;
  return m;
}

void scenario_one_equality(const SweepPlan& plan, const SweepResult& r) {
  const auto rows = index_rows(r);
  int checked = 0, differ = 0;
  for (int d : plan.densities)
    for (std::uint64_t s : plan.seeds) {
      ++checked;
      if (rows.at({"i", d, s, Approach::energy_focused})->gain_percent !=
          rows.at({"i", d, s, Approach::delay_focused})->gain_percent)
        ++differ;
    }
  report(3, "scenario (i) energy/delay gains bit-identical", differ == 0,
         fmt("%.0f of %.0f (density, seed) pairs differ", differ, checked));
}

void tier_monotonicity(const SweepPlan& plan, const SweepResult& r) {
  const auto rows = index_rows(r);
  const std::pair<const char*, const char*> chains[] = {{"v", "iii"}, {"iii", "ii"}, {"ii", "i"}, {"iv", "ii"}};
  int checked = 0, violations = 0;
  for (int d : plan.densities)
    for (std::uint64_t s : plan.seeds)
      for (auto [hi, lo] : chains) {
        ++checked;
        if (rows.at({hi, d, s, Approach::energy_focused})->gain_percent <
            rows.at({lo, d, s, Approach::energy_focused})->gain_percent)
          ++violations;
      }
  report(4, "tier monotonicity (energy-focused, exact)", violations == 0,
         fmt("%.0f violations over %.0f comparisons", violations, checked));
}

void approach_ordering(const SweepPlan& plan, const SweepResult& r) {
  const auto cells = index_cells(r);
  int violations = 0;
  std::string detail;
  for (int d : plan.densities) {
    const double e = cells.at({"v", d, Approach::energy_focused})->gain_mean;
    const double y = cells.at({"v", d, Approach::delay_focused})->gain_mean;
    if (e < y) ++violations;
    detail += fmt(" %.0f:%.3g/%.3g", d, e, y);
  }
  report(5, "scenario (v) mean gain energy >= delay", violations == 0, "density:energy/delay" + detail);
}

void delay_dissatisfaction(const SweepResult& r) {
  long nonzero = 0, cells = 0;
  for (const SweepCell& c : r.cells)
    if (c.approach == Approach::delay_focused) {
      ++cells;
      if (c.dissatisfied_total_mean != 0.0) ++nonzero;
    }
  long slots_nonzero = 0;
  for (const SweepRow& row : r.rows)
    if (row.approach == Approach::delay_focused)
      for (const SlotRecord& rec : row.records) slots_nonzero += rec.dissatisfied.total() != 0;
  report(6, "delay-focused dissatisfaction is zero", nonzero == 0 && slots_nonzero == 0 && cells > 0,
         fmt("%.0f nonzero cells of %.0f, %.0f nonzero slots", nonzero, cells, slots_nonzero));
}

void dissatisfaction_ordering(const SweepPlan& plan, const SweepResult& r) {
  const auto cells = index_cells(r);
  int violations = 0;
  std::string detail;
  for (int d : plan.densities) {
    const double ii = cells.at({"ii", d, Approach::energy_focused})->dissatisfied_mean;
    const double iv = cells.at({"iv", d, Approach::energy_focused})->dissatisfied_mean;
    const double v = cells.at({"v", d, Approach::energy_focused})->dissatisfied_mean;
    if (iv < ii || v > iv) ++violations;
    detail += fmt(" %.0f:%.3g/%.3g", d, ii, iv) + fmt("/%.3g", v);
  }
  report(7, "dissatisfaction (iv) >= (ii) and (v) <= (iv)", violations == 0,
         "density:ii/iv/v per slot, energy-focused" + detail);
}

void dissatisfaction_peak(const SweepPlan& plan, const SweepResult& r) {
  const auto cells = index_cells(r);
  std::size_t best = 0;
  double best_value = -1.0;
  std::string detail;
  for (std::size_t k = 0; k < plan.densities.size(); ++k) {
    const double v = cells.at({"v", plan.densities[k], Approach::energy_focused})->dissatisfied_mean;
    detail += fmt(" %.0f:%.3g", plan.densities[k], v);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const bool interior = best > 0 && best + 1 < plan.densities.size();
  report(8, "scenario (v) dissatisfaction peaks at an interior density", interior,
         fmt("argmax density %.0f;", plan.densities[best]) + detail);
}

void gain_saturation(const SweepPlan& plan, const SweepResult& r) {
  const auto cells = index_cells(r);
  std::size_t start = plan.densities.size();
  for (std::size_t k = 0; k < plan.densities.size(); ++k)
    if (cells.at({"i", plan.densities[k], Approach::energy_focused})->mean_sbs_raw_load > 1.0) {
      start = k;
      break;
    }
  int violations = 0;
  std::string detail;
  for (std::size_t k = start; k < plan.densities.size(); ++k) {
    const double g = cells.at({"i", plan.densities[k], Approach::energy_focused})->gain_mean;
    detail += fmt(" %.0f:%.3g", plan.densities[k], g);
    if (k > start && g > cells.at({"i", plan.densities[k - 1], Approach::energy_focused})->gain_mean) ++violations;
  }
  const bool reached = start < plan.densities.size();
  report(9, "scenario (i) gain non-increasing past raw load 1", reached && violations == 0,
         reached ? fmt("raw load > 1 from density %.0f;", plan.densities[start]) + detail
                 : std::string("mean SBS raw load never exceeds 1 on the grid"));
}

void invariant_suite(const ScenarioConfig& config, SweepPlan plan, const SweepResult& r) {
  long slots = 0, violations = 0;
  std::string first;
  for (const SweepRow& row : r.rows)
    for (const SlotRecord& rec : row.records) {
      ++slots;
      const auto v = check_slot_invariants(rec, row.approach);
      if (!v.empty() && first.empty()) first = row.scenario + " " + v.front();
      violations += static_cast<long>(v.size());
    }

  const int original_jobs = plan.jobs;
  plan.jobs = original_jobs == 1 ? 2 : 1;
  const SweepResult again = sweep(config, plan);
  const bool deterministic = again.rows == r.rows && again.cells == r.cells;
  report(10, "invariant suite on the full sweep", violations == 0 && deterministic && slots > 0,
         fmt("%.0f violations over %.0f slots; ", violations, slots) +
             fmt("jobs %.0f vs %.0f ", original_jobs, plan.jobs) + (deterministic ? "identical" : "DIFFER") +
             (first.empty() ? "" : "; first: " + first));
}

}  // namespace

int main() {
  const ScenarioConfig config = default_case_study();

  oracle_equivalence();
  strategy_ordering(config);

  SweepPlan plan = default_plan(config);
  plan.strategies = {Strategy::es};
  plan.jobs = omp_get_max_threads();
  plan.keep_records = true;
  const auto t0 = Clock::now();
  const SweepResult result = sweep(config, plan);
  const double sweep_s = seconds_since(t0);

  scenario_one_equality(plan, result);
  tier_monotonicity(plan, result);
  approach_ordering(plan, result);
  delay_dissatisfaction(result);
  dissatisfaction_ordering(plan, result);
  dissatisfaction_peak(plan, result);
  gain_saturation(plan, result);
  invariant_suite(config, plan, result);
  report(11, "full default sweep under 5 minutes", sweep_s < 300.0,
         fmt("%.1f s for %.0f runs with %.0f threads", sweep_s, static_cast<double>(result.rows.size()), plan.jobs));

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
