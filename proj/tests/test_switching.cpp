#include <doctest.h>

#include <algorithm>
#include <random>

#include "es_oracle.hpp"
#include "mtcs/switching.hpp"
#include "random_instances.hpp"

using namespace mtcs;

namespace {

BaseStation station(int id, TierId tier, BsClass cls, double capacity) {
  BaseStation b;
  b.id = id;
  b.tier = tier;
  b.bs_class = cls;
  b.capacity = capacity;
  b.profile = earth_profile(cls);
  return b;
}

struct Served {
  int user_id;
  int station_id;
  int demand;
};

// Tier-I-only network: MBS id 0 with `mbs_capacity`, rrh SBSs 1..n of capacity 20.
Network tier1_network(int n_sbs, double mbs_capacity) {
  ScenarioConfig c = default_case_study();
  c.stations = {station(0, TierId::TierI_MBS, BsClass::macro, mbs_capacity)};
  for (int k = 1; k <= n_sbs; ++k) c.stations.push_back(station(k, TierId::TierI_SBS, BsClass::rrh, 20.0));
  c.tier_set = {TierId::TierI_SBS, TierId::TierI_MBS};
  return build_network(c);
}

Snapshot snapshot_of(const Network& net, const std::vector<Served>& served, int mbs_preassigned) {
  std::vector<User> users;
  Assignment a;
  for (const Served& s : served) {
    User u;
    u.id = s.user_id;
    u.demand = s.demand;
    users.push_back(u);
    a.server.emplace_back(s.user_id, s.station_id);
  }
  std::sort(a.server.begin(), a.server.end());
  a.loads.push_back({0, net.station(0).capacity, mbs_preassigned, 0});
  for (std::size_t k : net.sbs) {
    const BaseStation& bs = net.stations[k];
    StationLoad l{bs.id, bs.capacity, 0, 0};
    for (const Served& s : served)
      if (s.station_id == bs.id) {
        l.assigned_demand += s.demand;
        ++l.assigned_users;
      }
    a.loads.push_back(l);
  }
  return make_snapshot(std::move(users), std::move(a));
}

constexpr EsKernel kKernels[] = {EsKernel::reference, EsKernel::gray_code, EsKernel::parallel};

}  // namespace

TEST_CASE("A3 keeps everything on") {
  const Network net = build_network(default_case_study());
  const Snapshot snap = make_snapshot({}, Assignment{});
  const SwitchDecision d = a3(net, snap);
  CHECK(d.on_off == std::vector<bool>(net.sbs_count(), true));
  CHECK(d.placement.users.empty());
  CHECK(d.power.grand_total == doctest::Approx(421.6));
}

TEST_CASE("ES with nobody to serve switches everything off") {
  const Network net = build_network(default_case_study());
  const Snapshot snap = make_snapshot({}, Assignment{});
  for (EsKernel k : kKernels) {
    const SwitchDecision d = es_switch(net, snap, Approach::energy_focused, k);
    CHECK(d.on_off == std::vector<bool>(net.sbs_count(), false));
  }
  CHECK(greedy_switch(net, snap, Approach::delay_focused).on_off == std::vector<bool>(net.sbs_count(), false));
}

TEST_CASE("ES two-SBS example") {
  // SBS1 carries 10 units, SBS2 18; the MBS has 15 units of room left.
  const Network net = tier1_network(2, 60.0);
  const Snapshot snap =
      snapshot_of(net, {{0, 1, 4}, {1, 1, 3}, {2, 1, 3}, {3, 2, 6}, {4, 2, 6}, {5, 2, 6}}, 45);
  for (EsKernel k : kKernels) {
    const SwitchDecision d = es_switch(net, snap, Approach::energy_focused, k);
    CHECK(d.on_off == std::vector<bool>{false, true});
    // sleep 56 + rrh at 0.9 + MBS at 55/60
    CHECK(d.power.grand_total == doctest::Approx(56.0 + 84.0 + 56.0 * 0.9 + 130.0 + 94.0 * 55.0 / 60.0));
    CHECK(d.placement.placed_demand(TierId::TierI_MBS) == 10);
  }
}

TEST_CASE("ES refuses more than the exhaustive limit") {
  const Network net = tier1_network(static_cast<int>(kMaxExhaustiveSbs) + 1, 60.0);
  const Snapshot snap = snapshot_of(net, {}, 0);
  CHECK_THROWS_AS(es_switch(net, snap, Approach::energy_focused), SwitchError);
  CHECK_NOTHROW(greedy_switch(net, snap, Approach::energy_focused));
}

TEST_CASE("greedy stops at the first SBS that cannot be placed") {
  // Loads 0.9, 0.1, 0.5; MBS has 5 units of room.
  const Network net = tier1_network(3, 60.0);
  const Snapshot snap = snapshot_of(net, {{0, 1, 6}, {1, 1, 6}, {2, 1, 6}, {3, 2, 2}, {4, 3, 5}, {5, 3, 5}}, 55);
  const SwitchDecision g = greedy_switch(net, snap, Approach::energy_focused);
  CHECK(g.on_off == std::vector<bool>{true, false, true});
  CHECK(g.feasible);
  CHECK(es_switch(net, snap, Approach::energy_focused).on_off == g.on_off);
}

TEST_CASE("decision order") {
  CHECK(decision_precedes(1.0, {true, true}, 2.0, {false, false}));
  CHECK(decision_precedes(1.0, {true, false}, 1.0, {true, true}));
  CHECK(decision_precedes(1.0, {false, true}, 1.0, {true, false}));
  CHECK_FALSE(decision_precedes(1.0, {true, false}, 1.0, {true, false}));
}

TEST_CASE("ES matches an independent exhaustive oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const testutil::Instance inst = testutil::random_instance(rng, 1 + trial % 7);
    oracle::EsOracle o(inst.net, inst.snap, inst.approach);
    const oracle::Result expected = o.solve();
    REQUIRE(expected.found);
    for (EsKernel k : kKernels) {
      const SwitchDecision d = es_switch(inst.net, inst.snap, inst.approach, k);
      CHECK(d.on_off == expected.on_off);
      CHECK(d.power.grand_total == expected.power);
    }
  }
}

TEST_CASE("ES <= greedy <= A3") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const testutil::Instance inst = testutil::random_instance(rng, 6, 150);
    const double es = es_switch(inst.net, inst.snap, inst.approach).power.grand_total;
    const SwitchDecision g = greedy_switch(inst.net, inst.snap, inst.approach);
    const double base = a3(inst.net, inst.snap, inst.approach).power.grand_total;
    CHECK(g.feasible);
    CHECK(es <= g.power.grand_total);
    CHECK(g.power.grand_total <= base);
  }
}

TEST_CASE("energy-focused ES power does not rise when a tier is appended") {
  using T = TierId;
  const TierSet i{T::TierI_SBS, T::TierI_MBS};
  const TierSet ii{T::TierI_SBS, T::TierI_MBS, T::TierIII_HAPS};
  const TierSet iii{T::TierI_SBS, T::TierI_MBS, T::TierII_UAV, T::TierIII_HAPS};
  const TierSet iv{T::TierI_SBS, T::TierI_MBS, T::TierIII_HAPS, T::TierIV_SAT};
  const std::vector<std::pair<TierSet, TierSet>> chains{{i, ii}, {ii, iii}, {ii, iv}, {iv, TierSet::all()}};

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    testutil::Instance inst = testutil::random_instance(rng, 6, 150);
    for (const auto& [small, large] : chains) {
      inst.config.tier_set = small;
      const double p_small = es_switch(build_network(inst.config), inst.snap, Approach::energy_focused).power.grand_total;
      inst.config.tier_set = large;
      const double p_large = es_switch(build_network(inst.config), inst.snap, Approach::energy_focused).power.grand_total;
      CHECK(p_large <= p_small);
    }
  }
}

TEST_CASE("Tier-I only: both approaches decide identically") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    testutil::Instance inst = testutil::random_instance(rng, 6, 120);
    inst.config.tier_set = {TierId::TierI_SBS, TierId::TierI_MBS};
    const Network net = build_network(inst.config);
    for (Strategy s : {Strategy::es, Strategy::greedy}) {
      const SwitchDecision e = decide(s, net, inst.snap, Approach::energy_focused);
      const SwitchDecision d = decide(s, net, inst.snap, Approach::delay_focused);
      CHECK(e.on_off == d.on_off);
      CHECK(e.power.grand_total == d.power.grand_total);
    }
  }
}
