#include "mtcs/switching.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include <omp.h>

namespace mtcs {

Snapshot make_snapshot(std::vector<User> users, Assignment assignment) {
  Snapshot s;
  s.users = std::move(users);
  s.assignment = std::move(assignment);
  for (User& u : s.users) u.server = s.assignment.server_of(u.id);
  s.offload_order.resize(s.users.size());
  std::iota(s.offload_order.begin(), s.offload_order.end(), 0u);
  std::sort(s.offload_order.begin(), s.offload_order.end(), [&s](std::uint32_t a, std::uint32_t b) {
    const User& ua = s.users[a];
    const User& ub = s.users[b];
    return offload_before({ua.id, ua.demand, ua.tolerance}, {ub.id, ub.demand, ub.tolerance});
  });
  return s;
}

bool decision_precedes(double power_a, const std::vector<bool>& a, double power_b, const std::vector<bool>& b) {
  if (power_a != power_b) return power_a < power_b;
  const auto active_a = std::count(a.begin(), a.end(), true);
  const auto active_b = std::count(b.begin(), b.end(), true);
  if (active_a != active_b) return active_a < active_b;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

using Mask = std::uint32_t;

std::vector<bool> to_vector(Mask mask, std::size_t n) {
  std::vector<bool> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = ((mask >> k) & 1u) != 0;
  return v;
}

// Same order as decision_precedes, on bitmasks (bit k = SBS k on).
bool mask_precedes(double power_a, Mask a, double power_b, Mask b) {
  if (power_a != power_b) return power_a < power_b;
  const int active_a = std::popcount(a);
  const int active_b = std::popcount(b);
  if (active_a != active_b) return active_a < active_b;
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  return ((a >> std::countr_zero(diff)) & 1u) == 0;
}

struct Best {
  bool found = false;
  Mask mask = 0;
  double power = 0.0;

  void offer(Mask m, double p) {
    if (!found || mask_precedes(p, m, power, mask)) {
      found = true;
      mask = m;
      power = p;
    }
  }
};

struct SwitchContext {
  const Network& net;
  const Snapshot& snap;
  Approach approach;
  std::vector<int> sbs_demand;    // per SBS position in net.sbs
  std::vector<int> user_sbs;      // per user index; -1 when not on a switchable SBS
  std::vector<LedgerEntry> base_ledger;
  double total_residual = 0.0;

  SwitchContext(const Network& n, const Snapshot& s, Approach a) : net(n), snap(s), approach(a) {
    sbs_demand.assign(net.sbs.size(), 0);
    user_sbs.assign(snap.users.size(), -1);
    for (std::size_t i = 0; i < snap.users.size(); ++i) {
      const int server = snap.users[i].server;
      for (std::size_t k = 0; k < net.sbs.size(); ++k) {
        if (net.stations[net.sbs[k]].id == server) {
          user_sbs[i] = static_cast<int>(k);
          sbs_demand[k] += snap.users[i].demand;
          break;
        }
      }
    }
    base_ledger = build_destinations(net, snap.assignment, approach);
    for (const LedgerEntry& e : base_ledger) total_residual += e.residual;
  }

  std::size_t n() const { return net.sbs.size(); }

  bool on(Mask mask, int k) const { return ((mask >> k) & 1u) != 0; }

  std::vector<OffloadUser> off_users(Mask mask) const {
    std::vector<OffloadUser> out;
    for (std::size_t i = 0; i < snap.users.size(); ++i) {
      if (user_sbs[i] < 0 || on(mask, user_sbs[i])) continue;
      const User& u = snap.users[i];
      out.push_back({u.id, u.demand, u.tolerance});
    }
    return out;
  }

  bool cannot_fit(int off_demand) const { return off_demand > total_residual * (1.0 + 1e-12) + 1e-9; }

  // Placement + power without building a Placement; buffers are reused.
  bool evaluate(Mask mask, std::vector<LedgerEntry>& ledger, std::vector<bool>& on_off, double& power) const {
    ledger = base_ledger;
    for (std::uint32_t idx : snap.offload_order) {
      const int k = user_sbs[idx];
      if (k < 0 || on(mask, k)) continue;
      const User& u = snap.users[idx];
      if (!detail::place_one(ledger, u.demand, u.tolerance, approach)) return false;
    }
    for (std::size_t k = 0; k < on_off.size(); ++k) on_off[k] = on(mask, static_cast<int>(k));
    power = network_power_w(net, snap.assignment, on_off, ledger, false).grand_total;
    return true;
  }

  SwitchDecision materialize(Mask mask) const {
    SwitchDecision d;
    d.on_off = to_vector(mask, n());
    const auto users = off_users(mask);
    auto outcome = place_users(users, base_ledger, approach);
    if (auto* p = std::get_if<Placement>(&outcome)) {
      d.placement = std::move(*p);
    } else {
      throw SwitchError("internal error: selected ON/OFF vector is infeasible");
    }
    d.power = network_power_w(net, snap.assignment, d.on_off, d.placement);
    return d;
  }
};

void check_size(const SwitchContext& ctx) {
  if (ctx.n() > kMaxExhaustiveSbs)
    throw SwitchError("exhaustive search over " + std::to_string(ctx.n()) + " SBSs exceeds the limit of " +
                      std::to_string(kMaxExhaustiveSbs) + "; use the greedy strategy");
}

Best es_reference(const SwitchContext& ctx) {
  Best best;
  const Mask count = Mask{1} << ctx.n();
  for (Mask mask = 0; mask < count; ++mask) {
    auto outcome = place_users(ctx.off_users(mask), ctx.base_ledger, ctx.approach);
    const auto* p = std::get_if<Placement>(&outcome);
    if (!p) continue;
    const auto on_off = to_vector(mask, ctx.n());
    best.offer(mask, network_power_w(ctx.net, ctx.snap.assignment, on_off, *p).grand_total);
  }
  return best;
}

Best es_gray(const SwitchContext& ctx) {
  Best best;
  std::vector<LedgerEntry> ledger;
  std::vector<bool> on_off(ctx.n());
  const Mask count = Mask{1} << ctx.n();
  int off_demand = std::accumulate(ctx.sbs_demand.begin(), ctx.sbs_demand.end(), 0);
  Mask prev = 0;
  for (Mask i = 0; i < count; ++i) {
    const Mask mask = i ^ (i >> 1);
    if (const Mask flipped = mask ^ prev) {
      const int k = std::countr_zero(flipped);
      off_demand += (mask & flipped) ? -ctx.sbs_demand[k] : ctx.sbs_demand[k];
    }
    prev = mask;
    if (ctx.cannot_fit(off_demand)) continue;
    double power = 0.0;
    if (ctx.evaluate(mask, ledger, on_off, power)) best.offer(mask, power);
  }
  return best;
}

Best es_parallel(const SwitchContext& ctx) {
  Best best;
  const long count = long{1} << ctx.n();
#pragma omp parallel
  {
    Best local;
    std::vector<LedgerEntry> ledger;
    std::vector<bool> on_off(ctx.n());
#pragma omp for schedule(static)
    for (long i = 0; i < count; ++i) {
      const Mask mask = static_cast<Mask>(i);
      int off_demand = 0;
      for (std::size_t k = 0; k < ctx.n(); ++k)
        if (!ctx.on(mask, static_cast<int>(k))) off_demand += ctx.sbs_demand[k];
      if (ctx.cannot_fit(off_demand)) continue;
      double power = 0.0;
      if (ctx.evaluate(mask, ledger, on_off, power)) local.offer(mask, power);
    }
#pragma omp critical(mtcs_es_reduce)
    if (local.found) best.offer(local.mask, local.power);
  }
  return best;
}

}  // namespace

SwitchDecision a3(const Network& net, const Snapshot& snap, Approach approach) {
  SwitchDecision d;
  d.on_off.assign(net.sbs.size(), true);
  d.placement.ledger = build_destinations(net, snap.assignment, approach);
  d.power = network_power_w(net, snap.assignment, d.on_off, d.placement);
  return d;
}

SwitchDecision es_switch(const Network& net, const Snapshot& snap, Approach approach, EsKernel kernel) {
  const SwitchContext ctx(net, snap, approach);
  check_size(ctx);
  Best best;
  switch (kernel) {
    case EsKernel::reference: best = es_reference(ctx); break;
    case EsKernel::gray_code: best = es_gray(ctx); break;
    case EsKernel::parallel: best = es_parallel(ctx); break;
  }
  // All-ON offloads nothing, so at least one vector is always feasible.
  if (!best.found) throw SwitchError("internal error: no feasible ON/OFF vector");
  return ctx.materialize(best.mask);
}

SwitchDecision greedy_switch(const Network& net, const Snapshot& snap, Approach approach) {
  const SwitchContext ctx(net, snap, approach);
  std::vector<std::size_t> order(ctx.n());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> raw(ctx.n());
  for (std::size_t k = 0; k < ctx.n(); ++k) raw[k] = bs_load(snap.assignment, net.stations[net.sbs[k]]).raw;
  std::stable_sort(order.begin(), order.end(), [&raw](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

  SwitchDecision best = a3(net, snap, approach);
  std::vector<bool> on_off(ctx.n(), true);
  for (std::size_t k : order) {
    on_off[k] = false;
    std::vector<OffloadUser> users;
    for (std::size_t i = 0; i < snap.users.size(); ++i) {
      const int s = ctx.user_sbs[i];
      if (s < 0 || on_off[static_cast<std::size_t>(s)]) continue;
      users.push_back({snap.users[i].id, snap.users[i].demand, snap.users[i].tolerance});
    }
    auto outcome = place_users(users, ctx.base_ledger, approach);
    auto* p = std::get_if<Placement>(&outcome);
    if (!p) break;
    auto power = network_power_w(net, snap.assignment, on_off, *p);
    if (decision_precedes(power.grand_total, on_off, best.power.grand_total, best.on_off)) {
      best.on_off = on_off;
      best.placement = std::move(*p);
      best.power = std::move(power);
    }
  }
  return best;
}

SwitchDecision decide(Strategy strategy, const Network& net, const Snapshot& snap, Approach approach) {
  switch (strategy) {
    case Strategy::a3: return a3(net, snap, approach);
    case Strategy::es: return es_switch(net, snap, approach);
    case Strategy::greedy: return greedy_switch(net, snap, approach);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace mtcs
