#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtcs {

// Tier-I SBS nodes are the only switchable nodes.
enum class TierId { TierI_SBS, TierI_MBS, TierII_UAV, TierIII_HAPS, TierIV_SAT };
inline constexpr std::size_t kTierCount = 5;
inline constexpr std::array<TierId, kTierCount> kAllTiers{
    TierId::TierI_SBS, TierId::TierI_MBS, TierId::TierII_UAV,
    TierId::TierIII_HAPS, TierId::TierIV_SAT};

enum class BsClass { macro, rrh, micro, pico, femto, uav, haps, leo };
enum class Mobility { pedestrian, cyclist, vehicular };
enum class Tolerance { intolerant, mid_tolerant, tolerant };
inline constexpr std::size_t kToleranceCount = 3;
enum class Approach { energy_focused, delay_focused };
enum class Strategy { a3, es, greedy };

constexpr std::size_t index_of(TierId t) { return static_cast<std::size_t>(t); }
constexpr std::size_t index_of(Tolerance t) { return static_cast<std::size_t>(t); }
constexpr bool is_ntn(TierId t) {
  return t == TierId::TierII_UAV || t == TierId::TierIII_HAPS || t == TierId::TierIV_SAT;
}

std::string_view to_string(TierId t);
std::string_view to_string(BsClass c);
std::string_view to_string(Mobility m);
std::string_view to_string(Tolerance t);
std::string_view to_string(Approach a);
std::string_view to_string(Strategy s);

std::optional<TierId> parse_tier(std::string_view s);
std::optional<BsClass> parse_bs_class(std::string_view s);
std::optional<Mobility> parse_mobility(std::string_view s);
std::optional<Tolerance> parse_tolerance(std::string_view s);
// Accepts the enum spelling as well as the short CLI forms "energy" / "delay".
std::optional<Approach> parse_approach(std::string_view s);
std::optional<Strategy> parse_strategy(std::string_view s);

/// Subset of the five tiers, stored as a bitmask.
class TierSet {
 public:
  constexpr TierSet() = default;
  constexpr TierSet(std::initializer_list<TierId> tiers) {
    for (TierId t : tiers) insert(t);
  }
  static constexpr TierSet all() {
    return {TierId::TierI_SBS, TierId::TierI_MBS, TierId::TierII_UAV,
            TierId::TierIII_HAPS, TierId::TierIV_SAT};
  }

  constexpr void insert(TierId t) { bits_ |= bit(t); }
  constexpr void erase(TierId t) { bits_ &= static_cast<std::uint8_t>(~bit(t)); }
  constexpr bool contains(TierId t) const { return (bits_ & bit(t)) != 0; }
  std::vector<TierId> tiers() const;

  constexpr bool operator==(const TierSet&) const = default;

 private:
  static constexpr std::uint8_t bit(TierId t) {
    return static_cast<std::uint8_t>(1u << index_of(t));
  }
  std::uint8_t bits_ = 0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

/// EARTH linear power model parameters for one base-station class.
struct PowerProfile {
  double p0_static_w = 0.0;
  double delta_p = 0.0;
  double p_max_tx_w = 0.0;
  double p_sleep_w = 0.0;
  int n_trx = 1;
  bool operator==(const PowerProfile&) const = default;
};

/// Power profile of the EARTH defaults shipped for a terrestrial class.
PowerProfile earth_profile(BsClass c);

struct BaseStation {
  int id = 0;
  TierId tier = TierId::TierI_SBS;
  BsClass bs_class = BsClass::micro;
  Vec2 position;
  double altitude_m = 0.0;  // reporting only
  double capacity = 0.0;    // demand-units per slot
  double availability_fraction = 1.0;
  PowerProfile profile;
  double carrier_freq_mhz = 2000.0;

  double effective_capacity() const { return capacity * availability_fraction; }
  bool operator==(const BaseStation&) const = default;
};

struct UserClassSpec {
  Mobility mobility = Mobility::pedestrian;
  double speed_mps = 0.0;
  Tolerance tolerance = Tolerance::tolerant;
  double mix_weight = 0.0;
  bool operator==(const UserClassSpec&) const = default;
};

struct Area {
  double width = 0.0;
  double height = 0.0;
  bool operator==(const Area&) const = default;
};

struct DemandRange {
  int min = 1;
  int max = 1;
  bool operator==(const DemandRange&) const = default;
};

/// Incremental watts per offloaded demand-unit, one rate per NTN tier.
struct NtnDynamicRates {
  double uav = 0.5;
  double haps = 0.5;
  double leo = 0.5;
  double for_tier(TierId t) const;
  bool operator==(const NtnDynamicRates&) const = default;
};

struct ScenarioConfig {
  Area area_m;
  std::vector<BaseStation> stations;
  TierSet tier_set = TierSet::all();
  std::vector<int> user_densities;
  DemandRange demand_range;
  int slot_count = 1;
  double slot_duration_s = 60.0;
  std::vector<std::uint64_t> seeds;
  Approach approach = Approach::energy_focused;
  Strategy strategy = Strategy::es;
  std::vector<UserClassSpec> class_mix;
  NtnDynamicRates ntn_dynamic_w_per_unit;
  double uav_static_w = 50.0;
  // Include NTN incremental power (dynamic + UAV static) in the network total.
  bool count_ntn_power = true;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Seven Tier-I stations (MBS at centre, six SBSs on a 300 m hexagonal ring),
/// one UAV-BS, one HAPS at half availability and one LEO satellite in a
/// 1 km x 1 km area.
ScenarioConfig default_case_study();

/// Empty when the config is valid; otherwise one entry per violated invariant.
std::vector<std::string> validate(const ScenarioConfig& config);

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { not_found, parse, validation };
  ScenarioError(Kind kind, std::string message, std::vector<std::string> violations = {});
  Kind kind() const { return kind_; }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  Kind kind_;
  std::vector<std::string> violations_;
};

/// Reads a JSON scenario document. Absent keys keep their default_case_study()
/// value; unknown keys are rejected.
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(std::string_view json_text);
std::string write_scenario(const ScenarioConfig& config);

}  // namespace mtcs
