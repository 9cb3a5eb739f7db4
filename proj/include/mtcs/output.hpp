#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "mtcs/scenario.hpp"
#include "mtcs/simulation.hpp"

namespace mtcs {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Six significant digits, printf "%.6g".
std::string format_number(double value);

std::string slots_csv(const SweepResult& result);
std::string gain_curve_csv(const SweepPlan& plan, const SweepResult& result);
std::string dissatisfaction_curve_csv(const SweepPlan& plan, const SweepResult& result);

/// `config` is echoed verbatim; re-running with it reproduces the CSVs.
nlohmann::json summary_json(std::string_view command, const ScenarioConfig& config, const SweepPlan& plan,
                            const SweepResult& result);

/// Writes slots.csv (optional), summary.json, gain_curve.csv and
/// dissatisfaction_curve.csv into `dir`, creating it if needed. Throws
/// std::runtime_error on I/O failure.
void write_bundle(const std::filesystem::path& dir, std::string_view command, const ScenarioConfig& config,
                  const SweepPlan& plan, const SweepResult& result, bool with_slots = true);

}  // namespace mtcs
