#include "mtcs/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "mtcs/output.hpp"
#include "mtcs/scenario.hpp"
#include "mtcs/simulation.hpp"
#include "mtcs/switching.hpp"

namespace mtcs {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
  return value;
}

Approach parse_approach_flag(const std::string& s) {
  auto a = parse_approach(s);
  if (!a) throw UsageError("unknown approach '" + s + "' (expected energy or delay)");
  return *a;
}

Strategy parse_strategy_flag(const std::string& s) {
  auto st = parse_strategy(s);
  if (!st) throw UsageError("unknown strategy '" + s + "' (expected a3, es or greedy)");
  return *st;
}

ScenarioConfig load_config(const std::string& path) {
  return path.empty() ? default_case_study() : load_scenario(path);
}

TierScenario scenario_for(const TierSet& tiers) {
  for (const TierScenario& s : case_study_scenarios())
    if (s.tiers == tiers) return s;
  return {"custom", tiers};
}

struct RunFlags {
  std::string scenario;
  std::string density;
  std::string seed;
  std::string approach;
  std::string strategy;
  std::string out = "mtcs-out";
};

struct SweepFlags {
  std::string scenario;
  std::string densities;
  std::string seeds;
  std::string scenarios;
  std::string approaches = "energy,delay";
  std::string strategies;
  int jobs = 0;
  bool no_slots = false;
  std::string out = "mtcs-out";
};

int cmd_run(const RunFlags& f, std::ostream& out) {
  ScenarioConfig config = load_config(f.scenario);
  const int density = f.density.empty() ? config.user_densities.front() : parse_number<int>(f.density, "density");
  const std::uint64_t seed = f.seed.empty() ? config.seeds.front() : parse_number<std::uint64_t>(f.seed, "seed");
  if (!f.approach.empty()) config.approach = parse_approach_flag(f.approach);
  if (!f.strategy.empty()) config.strategy = parse_strategy_flag(f.strategy);
  if (density < 1) throw UsageError("density must be >= 1");
  config.user_densities = {density};
  config.seeds = {seed};

  SweepPlan plan;
  plan.scenarios = {scenario_for(config.tier_set)};
  plan.densities = {density};
  plan.seeds = {seed};
  plan.approaches = {config.approach};
  plan.strategies = {config.strategy};
  plan.keep_records = true;
  const SweepResult result = sweep(config, plan);

  write_bundle(f.out, "run", config, plan, result);
  const SweepRow& row = result.rows.front();
  out << "run " << row.scenario << " density=" << density << " seed=" << seed << " approach="
      << to_string(config.approach) << " strategy=" << to_string(config.strategy)
      << ": gain=" << format_number(row.gain_percent) << "% dissatisfied/slot="
      << format_number(row.mean_dissatisfied_per_slot) << "\n";
  return kExitOk;
}

int cmd_sweep(const SweepFlags& f, std::ostream& out) {
  ScenarioConfig config = load_config(f.scenario);
  SweepPlan plan = default_plan(config);

  if (!f.densities.empty()) {
    plan.densities.clear();
    for (const auto& d : split(f.densities)) plan.densities.push_back(parse_number<int>(d, "density"));
    for (int d : plan.densities)
      if (d < 1) throw UsageError("densities must be >= 1");
  }
  if (!f.seeds.empty()) {
    const auto items = split(f.seeds);
    plan.seeds.clear();
    if (items.size() == 1 && f.seeds.find(',') == std::string::npos) {
      const auto n = parse_number<std::uint64_t>(items.front(), "seed count");
      if (n < 1) throw UsageError("--seeds count must be >= 1");
      for (std::uint64_t s = 1; s <= n; ++s) plan.seeds.push_back(s);
    } else {
      for (const auto& s : items) plan.seeds.push_back(parse_number<std::uint64_t>(s, "seed"));
    }
  }
  if (!f.scenarios.empty() && f.scenarios != "all") {
    plan.scenarios.clear();
    for (const auto& label : split(f.scenarios)) {
      const TierScenario* s = find_scenario(label);
      if (!s) throw UsageError("unknown scenario label '" + label + "' (expected i, ii, iii, iv or v)");
      plan.scenarios.push_back(*s);
    }
  }
  plan.approaches.clear();
  for (const auto& a : split(f.approaches)) plan.approaches.push_back(parse_approach_flag(a));
  if (!f.strategies.empty()) {
    plan.strategies.clear();
    for (const auto& s : split(f.strategies)) plan.strategies.push_back(parse_strategy_flag(s));
  }
  if (plan.densities.empty() || plan.seeds.empty() || plan.scenarios.empty() || plan.approaches.empty() ||
      plan.strategies.empty())
    throw UsageError("empty sweep axis");
  plan.jobs = f.jobs > 0 ? f.jobs : omp_get_max_threads();
  plan.keep_records = !f.no_slots;

  config.user_densities = plan.densities;
  config.seeds = plan.seeds;
  const SweepResult result = sweep(config, plan);
  write_bundle(f.out, "sweep", config, plan, result, !f.no_slots);
  out << "sweep: " << result.rows.size() << " runs, " << result.cells.size() << " cells written to " << f.out
      << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-tier cell-switching simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  RunFlags rf;
  auto* run_cmd = app.add_subcommand("run", "Simulate one (density, seed) run");
  run_cmd->add_option("--scenario", rf.scenario, "Scenario JSON (default: built-in case study)");
  run_cmd->add_option("--density", rf.density, "Number of users");
  run_cmd->add_option("--seed", rf.seed, "Master seed");
  run_cmd->add_option("--approach", rf.approach, "energy | delay");
  run_cmd->add_option("--strategy", rf.strategy, "a3 | es | greedy");
  run_cmd->add_option("--out", rf.out, "Output directory");

  SweepFlags sf;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep tier scenarios x densities x seeds");
  sweep_cmd->add_option("--scenario", sf.scenario, "Scenario JSON (default: built-in case study)");
  sweep_cmd->add_option("--densities", sf.densities, "Comma-separated user densities");
  sweep_cmd->add_option("--seeds", sf.seeds, "Seed count N (seeds 1..N) or comma-separated seed list");
  sweep_cmd->add_option("--scenarios", sf.scenarios, "Subset of i,ii,iii,iv,v (default all)");
  sweep_cmd->add_option("--approaches", sf.approaches, "Subset of energy,delay");
  sweep_cmd->add_option("--strategies", sf.strategies, "Subset of a3,es,greedy (default: scenario strategy)");
  sweep_cmd->add_option("--jobs", sf.jobs, "Worker threads (0 = all cores)");
  sweep_cmd->add_flag("--no-slots", sf.no_slots, "Skip slots.csv");
  sweep_cmd->add_option("--out", sf.out, "Output directory");

  std::string dump_path;
  auto* scen_cmd = app.add_subcommand("scenario", "Print the built-in case-study scenario as JSON");
  scen_cmd->add_option("--out", dump_path, "Write to a file instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kToolVersion) + "\n" : app.help());
      return kExitOk;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(rf, out);
    if (*sweep_cmd) return cmd_sweep(sf, out);
    if (*scen_cmd) {
      const std::string text = write_scenario(default_case_study());
      if (dump_path.empty()) {
        out << text;
      } else {
        std::ofstream f(dump_path, std::ios::binary);
        if (!(f << text)) {
          err << "error: cannot write " << dump_path << "\n";
          return kExitIo;
        }
      }
      return kExitOk;
    }
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ScenarioError::Kind::not_found ? kExitIo : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SwitchError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace mtcs
