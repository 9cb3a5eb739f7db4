#include "mtcs/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "mtcs/scenario_json.hpp"

namespace mtcs {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kTierCount> kTierNames{
    "TierI_SBS", "TierI_MBS", "TierII_UAV", "TierIII_HAPS", "TierIV_SAT"};
constexpr std::array<std::string_view, 8> kClassNames{
    "macro", "rrh", "micro", "pico", "femto", "uav", "haps", "leo"};
constexpr std::array<std::string_view, 3> kMobilityNames{"pedestrian", "cyclist", "vehicular"};
constexpr std::array<std::string_view, 3> kToleranceNames{"intolerant", "mid_tolerant", "tolerant"};
constexpr std::array<std::string_view, 2> kApproachNames{"energy_focused", "delay_focused"};
constexpr std::array<std::string_view, 3> kStrategyNames{"a3", "es", "greedy"};

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == s) return static_cast<E>(i);
  return std::nullopt;
}

}  // namespace

std::string_view to_string(TierId t) { return kTierNames[index_of(t)]; }
std::string_view to_string(BsClass c) { return kClassNames[static_cast<std::size_t>(c)]; }
std::string_view to_string(Mobility m) { return kMobilityNames[static_cast<std::size_t>(m)]; }
std::string_view to_string(Tolerance t) { return kToleranceNames[index_of(t)]; }
std::string_view to_string(Approach a) { return kApproachNames[static_cast<std::size_t>(a)]; }
std::string_view to_string(Strategy s) { return kStrategyNames[static_cast<std::size_t>(s)]; }

std::optional<TierId> parse_tier(std::string_view s) { return lookup<TierId>(kTierNames, s); }
std::optional<BsClass> parse_bs_class(std::string_view s) { return lookup<BsClass>(kClassNames, s); }
std::optional<Mobility> parse_mobility(std::string_view s) { return lookup<Mobility>(kMobilityNames, s); }
std::optional<Tolerance> parse_tolerance(std::string_view s) { return lookup<Tolerance>(kToleranceNames, s); }
std::optional<Strategy> parse_strategy(std::string_view s) { return lookup<Strategy>(kStrategyNames, s); }

std::optional<Approach> parse_approach(std::string_view s) {
  if (s == "energy") return Approach::energy_focused;
  if (s == "delay") return Approach::delay_focused;
  return lookup<Approach>(kApproachNames, s);
}

std::vector<TierId> TierSet::tiers() const {
  std::vector<TierId> out;
  for (TierId t : kAllTiers)
    if (contains(t)) out.push_back(t);
  return out;
}

double NtnDynamicRates::for_tier(TierId t) const {
  switch (t) {
    case TierId::TierII_UAV: return uav;
    case TierId::TierIII_HAPS: return haps;
    case TierId::TierIV_SAT: return leo;
    default: return 0.0;
  }
}

PowerProfile earth_profile(BsClass c) {
  switch (c) {
    case BsClass::macro: return {130.0, 4.7, 20.0, 75.0, 1};
    case BsClass::rrh: return {84.0, 2.8, 20.0, 56.0, 1};
    case BsClass::micro: return {56.0, 2.6, 6.3, 39.0, 1};
    case BsClass::pico: return {6.8, 4.0, 0.13, 4.3, 1};
    case BsClass::femto: return {4.8, 8.0, 0.05, 2.9, 1};
    // NTN nodes are charged through ntn_dynamic_w_per_unit / uav_static_w;
    // their profile is carried for reporting only.
    case BsClass::uav: return {50.0, 1.0, 1.0, 0.0, 1};
    case BsClass::haps:
    case BsClass::leo: return {1.0, 1.0, 1.0, 0.0, 1};
  }
  return {};
}

ScenarioConfig default_case_study() {
  ScenarioConfig c;
  c.area_m = {1000.0, 1000.0};
  const Vec2 centre{500.0, 500.0};

  BaseStation mbs;
  mbs.id = 0;
  mbs.tier = TierId::TierI_MBS;
  mbs.bs_class = BsClass::macro;
  mbs.position = centre;
  mbs.altitude_m = 25.0;
  mbs.capacity = 60.0;
  mbs.profile = earth_profile(BsClass::macro);
  c.stations.push_back(mbs);

  // Opposite ring positions share a class so the layout stays symmetric.
  constexpr std::array<BsClass, 6> ring{BsClass::rrh, BsClass::micro, BsClass::pico,
                                        BsClass::rrh, BsClass::micro, BsClass::femto};
  for (int k = 1; k <= 6; ++k) {
    const double angle = k * std::numbers::pi / 3.0;
    BaseStation sbs;
    sbs.id = k;
    sbs.tier = TierId::TierI_SBS;
    sbs.bs_class = ring[static_cast<std::size_t>(k - 1)];
    sbs.position = {centre.x + 300.0 * std::cos(angle), centre.y + 300.0 * std::sin(angle)};
    sbs.altitude_m = 10.0;
    sbs.capacity = 20.0;
    sbs.profile = earth_profile(sbs.bs_class);
    c.stations.push_back(sbs);
  }

  auto ntn = [&](int id, TierId tier, BsClass cls, double altitude, double capacity,
                 double availability) {
    BaseStation bs;
    bs.id = id;
    bs.tier = tier;
    bs.bs_class = cls;
    bs.position = centre;
    bs.altitude_m = altitude;
    bs.capacity = capacity;
    bs.availability_fraction = availability;
    bs.profile = earth_profile(cls);
    c.stations.push_back(bs);
  };
  ntn(7, TierId::TierII_UAV, BsClass::uav, 100.0, 30.0, 1.0);
  ntn(8, TierId::TierIII_HAPS, BsClass::haps, 20000.0, 100.0, 0.5);
  ntn(9, TierId::TierIV_SAT, BsClass::leo, 550000.0, 200.0, 1.0);

  c.tier_set = TierSet::all();
  c.user_densities = {50, 100, 200, 400, 600, 800};
  c.demand_range = {1, 4};
  c.slot_count = 500;
  c.slot_duration_s = 60.0;
  for (std::uint64_t s = 1; s <= 10; ++s) c.seeds.push_back(s);
  c.approach = Approach::energy_focused;
  c.strategy = Strategy::es;

  constexpr std::array<std::pair<Mobility, double>, 3> speeds{
      {{Mobility::pedestrian, 1.4}, {Mobility::cyclist, 4.0}, {Mobility::vehicular, 14.0}}};
  for (auto [mobility, speed] : speeds)
    for (Tolerance tol : {Tolerance::intolerant, Tolerance::mid_tolerant, Tolerance::tolerant})
      c.class_mix.push_back({mobility, speed, tol, 1.0 / 9.0});

  c.ntn_dynamic_w_per_unit = {0.5, 0.5, 0.5};
  c.uav_static_w = 50.0;
  c.count_ntn_power = true;
  return c;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> v;
  auto fail = [&v](std::string msg) { v.push_back(std::move(msg)); };

  if (!(c.area_m.width > 0.0 && c.area_m.height > 0.0))
    fail("area_m: width and height must be positive");
  if (!(c.demand_range.min > 0 && c.demand_range.min <= c.demand_range.max))
    fail("demand_range: require 0 < d_min <= d_max");
  if (c.slot_count < 1) fail("slot_count: must be >= 1");
  if (!(c.slot_duration_s > 0.0)) fail("slot_duration_s: must be positive");
  if (c.user_densities.empty()) fail("user_densities: must list at least one density");
  for (int d : c.user_densities)
    if (d < 1) {
      fail("user_densities: every density must be >= 1");
      break;
    }
  if (c.seeds.empty()) fail("seeds: must list at least one seed");
  if (!c.tier_set.contains(TierId::TierI_SBS) || !c.tier_set.contains(TierId::TierI_MBS))
    fail("tier_set: must contain TierI_SBS and TierI_MBS");

  int mbs_count = 0;
  int sbs_count = 0;
  std::set<int> ids;
  bool duplicate_id = false;
  for (const BaseStation& bs : c.stations) {
    const std::string tag = "stations[id=" + std::to_string(bs.id) + "]";
    if (!ids.insert(bs.id).second) duplicate_id = true;
    if (bs.tier == TierId::TierI_MBS) ++mbs_count;
    if (bs.tier == TierId::TierI_SBS) ++sbs_count;
    if (!(bs.capacity > 0.0)) fail(tag + ".capacity: must be positive");
    if (!(bs.availability_fraction >= 0.0 && bs.availability_fraction <= 1.0))
      fail(tag + ".availability_fraction: must lie in [0, 1]");
    if (!(bs.carrier_freq_mhz > 0.0)) fail(tag + ".carrier_freq_mhz: must be positive");
    if (!std::isfinite(bs.position.x) || !std::isfinite(bs.position.y))
      fail(tag + ".position: must be finite");
    const PowerProfile& p = bs.profile;
    if (!(p.p_sleep_w >= 0.0 && p.p0_static_w > p.p_sleep_w))
      fail(tag + ".profile: require p0_static > p_sleep >= 0");
    if (!(p.delta_p > 0.0)) fail(tag + ".profile: delta_p must be positive");
    if (!(p.p_max_tx_w > 0.0)) fail(tag + ".profile: p_max_tx must be positive");
    if (p.n_trx < 1) fail(tag + ".profile: n_trx must be >= 1");
  }
  if (duplicate_id) fail("stations: ids must be unique");
  if (mbs_count != 1) fail("stations: exactly one MBS (TierI_MBS) required");
  if (sbs_count < 1) fail("stations: at least one TierI_SBS required");

  if (c.class_mix.empty()) {
    fail("class_mix: must list at least one class");
  } else {
    double sum = 0.0;
    bool negative_weight = false;
    bool negative_speed = false;
    for (const UserClassSpec& u : c.class_mix) {
      sum += u.mix_weight;
      negative_weight |= !(u.mix_weight >= 0.0);
      negative_speed |= !(u.speed_mps >= 0.0);
    }
    if (std::abs(sum - 1.0) > 1e-9) fail("class_mix: mix_weight values must sum to 1");
    if (negative_weight) fail("class_mix: mix_weight values must be non-negative");
    if (negative_speed) fail("class_mix: speed_mps must be >= 0");
  }

  const NtnDynamicRates& r = c.ntn_dynamic_w_per_unit;
  if (!(r.uav >= 0.0 && r.haps >= 0.0 && r.leo >= 0.0))
    fail("ntn_dynamic_w_per_unit: rates must be non-negative");
  if (!(c.uav_static_w >= 0.0)) fail("uav_static_w: must be non-negative");
  return v;
}

ScenarioError::ScenarioError(Kind kind, std::string message, std::vector<std::string> violations)
    : std::runtime_error(std::move(message)), kind_(kind), violations_(std::move(violations)) {}

// ---------------------------------------------------------------------------
// JSON

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ScenarioError(ScenarioError::Kind::parse, "field '" + path + "': " + what);
}

template <typename T>
T get_as(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    field_error(path, e.what());
  }
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing required field");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= (it.key() == k);
    if (!ok) field_error(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

template <typename E>
E get_enum(const json& j, const std::string& path, std::optional<E> (*parse)(std::string_view)) {
  const auto s = get_as<std::string>(j, path);
  auto e = parse(s);
  if (!e) field_error(path, "unknown value \"" + s + "\"");
  return *e;
}

json profile_to_json(const PowerProfile& p) {
  return {{"p0_static", p.p0_static_w}, {"delta_p", p.delta_p}, {"p_max_tx", p.p_max_tx_w},
          {"p_sleep", p.p_sleep_w}, {"n_trx", p.n_trx}};
}

PowerProfile profile_from_json(const json& j, const std::string& path) {
  check_keys(j, {"p0_static", "delta_p", "p_max_tx", "p_sleep", "n_trx"}, path);
  PowerProfile p;
  p.p0_static_w = get_as<double>(require(j, "p0_static", path), path + ".p0_static");
  p.delta_p = get_as<double>(require(j, "delta_p", path), path + ".delta_p");
  p.p_max_tx_w = get_as<double>(require(j, "p_max_tx", path), path + ".p_max_tx");
  p.p_sleep_w = get_as<double>(require(j, "p_sleep", path), path + ".p_sleep");
  if (j.contains("n_trx")) p.n_trx = get_as<int>(j["n_trx"], path + ".n_trx");
  return p;
}

json station_to_json(const BaseStation& s) {
  return {{"id", s.id},
          {"tier", to_string(s.tier)},
          {"bs_class", to_string(s.bs_class)},
          {"position", {{"x", s.position.x}, {"y", s.position.y}}},
          {"altitude_m", s.altitude_m},
          {"capacity", s.capacity},
          {"availability_fraction", s.availability_fraction},
          {"profile", profile_to_json(s.profile)},
          {"carrier_freq_mhz", s.carrier_freq_mhz}};
}

BaseStation station_from_json(const json& j, const std::string& path) {
  check_keys(j, {"id", "tier", "bs_class", "position", "altitude_m", "capacity",
                 "availability_fraction", "profile", "carrier_freq_mhz"},
             path);
  BaseStation s;
  s.id = get_as<int>(require(j, "id", path), path + ".id");
  s.tier = get_enum<TierId>(require(j, "tier", path), path + ".tier", parse_tier);
  s.bs_class = get_enum<BsClass>(require(j, "bs_class", path), path + ".bs_class", parse_bs_class);
  const json& pos = require(j, "position", path);
  check_keys(pos, {"x", "y"}, path + ".position");
  s.position.x = get_as<double>(require(pos, "x", path + ".position"), path + ".position.x");
  s.position.y = get_as<double>(require(pos, "y", path + ".position"), path + ".position.y");
  s.capacity = get_as<double>(require(j, "capacity", path), path + ".capacity");
  if (j.contains("altitude_m")) s.altitude_m = get_as<double>(j["altitude_m"], path + ".altitude_m");
  if (j.contains("availability_fraction"))
    s.availability_fraction = get_as<double>(j["availability_fraction"], path + ".availability_fraction");
  if (j.contains("carrier_freq_mhz"))
    s.carrier_freq_mhz = get_as<double>(j["carrier_freq_mhz"], path + ".carrier_freq_mhz");
  s.profile = j.contains("profile") ? profile_from_json(j["profile"], path + ".profile")
                                    : earth_profile(s.bs_class);
  return s;
}

std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

json scenario_to_json(const ScenarioConfig& c) {
  json stations = json::array();
  for (const BaseStation& s : c.stations) stations.push_back(station_to_json(s));
  json tiers = json::array();
  for (TierId t : c.tier_set.tiers()) tiers.push_back(to_string(t));
  json mix = json::array();
  for (const UserClassSpec& u : c.class_mix)
    mix.push_back({{"mobility", to_string(u.mobility)},
                   {"speed_mps", u.speed_mps},
                   {"tolerance", to_string(u.tolerance)},
                   {"mix_weight", u.mix_weight}});

  return {{"area_m", {{"width", c.area_m.width}, {"height", c.area_m.height}}},
          {"stations", std::move(stations)},
          {"tier_set", std::move(tiers)},
          {"user_densities", c.user_densities},
          {"demand_range", {{"d_min", c.demand_range.min}, {"d_max", c.demand_range.max}}},
          {"slot_count", c.slot_count},
          {"slot_duration_s", c.slot_duration_s},
          {"seeds", c.seeds},
          {"approach", to_string(c.approach)},
          {"strategy", to_string(c.strategy)},
          {"class_mix", std::move(mix)},
          {"ntn_dynamic_w_per_unit",
           {{"TierII_UAV", c.ntn_dynamic_w_per_unit.uav},
            {"TierIII_HAPS", c.ntn_dynamic_w_per_unit.haps},
            {"TierIV_SAT", c.ntn_dynamic_w_per_unit.leo}}},
          {"uav_static_w", c.uav_static_w},
          {"count_ntn_power", c.count_ntn_power}};
}

ScenarioConfig scenario_from_json(const json& doc, ScenarioConfig c) {
  check_keys(doc,
             {"area_m", "stations", "tier_set", "user_densities", "demand_range", "slot_count",
              "slot_duration_s", "seeds", "approach", "strategy", "class_mix",
              "ntn_dynamic_w_per_unit", "uav_static_w", "count_ntn_power"},
             "");

  if (doc.contains("area_m")) {
    const json& a = doc["area_m"];
    check_keys(a, {"width", "height"}, "area_m");
    c.area_m.width = get_as<double>(require(a, "width", "area_m"), "area_m.width");
    c.area_m.height = get_as<double>(require(a, "height", "area_m"), "area_m.height");
  }
  if (doc.contains("stations")) {
    const json& arr = doc["stations"];
    if (!arr.is_array()) field_error("stations", "expected an array");
    c.stations.clear();
    for (std::size_t i = 0; i < arr.size(); ++i)
      c.stations.push_back(station_from_json(arr[i], "stations[" + std::to_string(i) + "]"));
  }
  if (doc.contains("tier_set")) {
    const json& arr = doc["tier_set"];
    if (!arr.is_array()) field_error("tier_set", "expected an array");
    c.tier_set = {};
    for (std::size_t i = 0; i < arr.size(); ++i)
      c.tier_set.insert(get_enum<TierId>(arr[i], "tier_set[" + std::to_string(i) + "]", parse_tier));
  }
  if (doc.contains("user_densities"))
    c.user_densities = get_as<std::vector<int>>(doc["user_densities"], "user_densities");
  if (doc.contains("demand_range")) {
    const json& d = doc["demand_range"];
    check_keys(d, {"d_min", "d_max"}, "demand_range");
    c.demand_range.min = get_as<int>(require(d, "d_min", "demand_range"), "demand_range.d_min");
    c.demand_range.max = get_as<int>(require(d, "d_max", "demand_range"), "demand_range.d_max");
  }
  if (doc.contains("slot_count")) c.slot_count = get_as<int>(doc["slot_count"], "slot_count");
  if (doc.contains("slot_duration_s"))
    c.slot_duration_s = get_as<double>(doc["slot_duration_s"], "slot_duration_s");
  if (doc.contains("seeds")) c.seeds = get_as<std::vector<std::uint64_t>>(doc["seeds"], "seeds");
  if (doc.contains("approach"))
    c.approach = get_enum<Approach>(doc["approach"], "approach", parse_approach);
  if (doc.contains("strategy"))
    c.strategy = get_enum<Strategy>(doc["strategy"], "strategy", parse_strategy);
  if (doc.contains("class_mix")) {
    const json& arr = doc["class_mix"];
    if (!arr.is_array()) field_error("class_mix", "expected an array");
    c.class_mix.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "class_mix[" + std::to_string(i) + "]";
      const json& u = arr[i];
      check_keys(u, {"mobility", "speed_mps", "tolerance", "mix_weight"}, path);
      UserClassSpec spec;
      spec.mobility = get_enum<Mobility>(require(u, "mobility", path), path + ".mobility", parse_mobility);
      spec.speed_mps = get_as<double>(require(u, "speed_mps", path), path + ".speed_mps");
      spec.tolerance = get_enum<Tolerance>(require(u, "tolerance", path), path + ".tolerance", parse_tolerance);
      spec.mix_weight = get_as<double>(require(u, "mix_weight", path), path + ".mix_weight");
      c.class_mix.push_back(spec);
    }
  }
  if (doc.contains("ntn_dynamic_w_per_unit")) {
    const json& r = doc["ntn_dynamic_w_per_unit"];
    if (r.is_number()) {
      const double w = r.get<double>();
      c.ntn_dynamic_w_per_unit = {w, w, w};
    } else {
      check_keys(r, {"TierII_UAV", "TierIII_HAPS", "TierIV_SAT"}, "ntn_dynamic_w_per_unit");
      if (r.contains("TierII_UAV"))
        c.ntn_dynamic_w_per_unit.uav = get_as<double>(r["TierII_UAV"], "ntn_dynamic_w_per_unit.TierII_UAV");
      if (r.contains("TierIII_HAPS"))
        c.ntn_dynamic_w_per_unit.haps = get_as<double>(r["TierIII_HAPS"], "ntn_dynamic_w_per_unit.TierIII_HAPS");
      if (r.contains("TierIV_SAT"))
        c.ntn_dynamic_w_per_unit.leo = get_as<double>(r["TierIV_SAT"], "ntn_dynamic_w_per_unit.TierIV_SAT");
    }
  }
  if (doc.contains("uav_static_w")) c.uav_static_w = get_as<double>(doc["uav_static_w"], "uav_static_w");
  if (doc.contains("count_ntn_power"))
    c.count_ntn_power = get_as<bool>(doc["count_ntn_power"], "count_ntn_power");
  return c;
}

ScenarioConfig parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(ScenarioError::Kind::parse,
                        "parse error at " + line_context(text, e.byte) + ": " + e.what());
  }
  ScenarioConfig c = scenario_from_json(doc, default_case_study());
  if (auto violations = validate(c); !violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ScenarioError(ScenarioError::Kind::validation, msg, std::move(violations));
  }
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ScenarioError(ScenarioError::Kind::not_found, "cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(e.kind(), path.string() + ": " + e.what(), e.violations());
  }
}

std::string write_scenario(const ScenarioConfig& config) {
  return scenario_to_json(config).dump(2) + "\n";
}

}  // namespace mtcs
