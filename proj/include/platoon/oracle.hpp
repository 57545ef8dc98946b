#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "platoon/error.hpp"
#include "platoon/instance.hpp"

namespace platoon {

/// Total order of platoon ids that respects each lane's FIFO order.
using AdmissionOrder = std::vector<std::string>;

inline constexpr std::uint64_t default_order_cap = 500'000;

/// Number of admission orders: the multinomial of the lane populations,
/// saturating at UINT64_MAX.
inline std::uint64_t admission_order_count(const Instance& inst) {
  using u128 = unsigned __int128;
  constexpr u128 saturated = std::numeric_limits<std::uint64_t>::max();
  u128 result = 1;
  std::uint64_t placed = 0;
  for (LaneIndex lane = 0; lane < inst.topology().lane_count(); ++lane) {
    const std::uint64_t r = inst.lane(lane).size();
    placed += r;
    // C(placed, r), exact at every step.
    u128 binom = 1;
    for (std::uint64_t j = 1; j <= r; ++j) {
      binom = binom * (placed - r + j) / j;
      if (binom > saturated) return std::numeric_limits<std::uint64_t>::max();
    }
    result *= binom;
    if (result > saturated) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

/// Processes platoons in `order`; each crosses as soon as it is released,
/// its lane predecessor has cleared, and every earlier-processed platoon on
/// a conflicting lane has cleared.
inline Schedule earliest_schedule_for_order(const Instance& inst, const AdmissionOrder& order) {
  if (order.size() != inst.size()) throw InvalidArgument("admission order must list every platoon once");
  const std::size_t lanes = inst.topology().lane_count();
  std::vector<std::size_t> next(lanes, 0);
  std::vector<std::optional<Time>> lane_clear(lanes);
  Schedule sched;
  for (const std::string& id : order) {
    auto idx = inst.find(id);
    if (!idx) throw InvalidArgument("admission order names unknown platoon '" + id + "'");
    const LaneIndex lane = inst.lane_of(*idx);
    const auto seq = inst.lane(lane);
    if (next[lane] >= seq.size() || seq[next[lane]] != *idx)
      throw InvalidArgument("admission order breaks lane order at '" + id + "'");
    ++next[lane];
    const Platoon& p = inst.platoon(*idx);
    Time at = p.release;
    for (LaneIndex other = 0; other < lanes; ++other)
      if ((other == lane || inst.topology().conflicts(lane, other)) && lane_clear[other])
        at = max(at, *lane_clear[other]);
    sched.crossing_times[p.id] = at;
    lane_clear[lane] = at + p.length;
  }
  return sched;
}

/// The order a schedule induces: ascending crossing time, ties by lane name
/// then lane position.
inline AdmissionOrder induced_order(const Instance& inst, const Schedule& sched) {
  std::vector<std::size_t> idx(inst.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto crossing = [&](std::size_t i) { return sched.crossing_times.at(inst.platoon(i).id); };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Time ca = crossing(a), cb = crossing(b);
    if (ca != cb) return ca < cb;
    const Platoon& pa = inst.platoon(a);
    const Platoon& pb = inst.platoon(b);
    if (pa.lane != pb.lane) return pa.lane < pb.lane;
    return pa.release < pb.release;
  });
  AdmissionOrder order;
  for (std::size_t i : idx) order.push_back(inst.platoon(i).id);
  return order;
}

struct OracleResult {
  Time dstar;
  Schedule schedule;
  AdmissionOrder order;
  std::uint64_t orders_evaluated = 0;
};

/// Exact minimum delay by enumerating every admission order and scheduling
/// each as early as possible. Any valid schedule is dominated by the
/// earliest schedule of the order it induces, so the minimum over orders is
/// the optimum. Enumeration picks lanes in lane-name order, so the witness
/// is the first minimizer in that lexicographic order.
inline OracleResult brute_force_optimal(const Instance& inst,
                                        std::uint64_t order_cap = default_order_cap) {
  const std::uint64_t required = admission_order_count(inst);
  if (required > order_cap)
    throw CapExceeded("instance needs " + std::to_string(required) +
                          " admission orders, above the cap of " + std::to_string(order_cap),
                      required);

  const Topology& topo = inst.topology();
  const std::size_t lanes = topo.lane_count();
  std::vector<LaneIndex> by_name(lanes);
  std::iota(by_name.begin(), by_name.end(), LaneIndex{0});
  std::sort(by_name.begin(), by_name.end(),
            [&](LaneIndex a, LaneIndex b) { return topo.lane_name(a) < topo.lane_name(b); });

  std::vector<std::vector<LaneIndex>> blockers(lanes);
  for (LaneIndex l = 0; l < lanes; ++l)
    for (LaneIndex o = 0; o < lanes; ++o)
      if (o == l || topo.conflicts(l, o)) blockers[l].push_back(o);

  std::vector<std::size_t> next(lanes, 0);
  std::vector<Time> lane_clear(lanes, zero_time);
  std::vector<std::size_t> path;
  std::vector<Time> at(inst.size());
  path.reserve(inst.size());

  OracleResult best;
  bool have_best = false;

  auto descend = [&](auto& self, Time worst) -> void {
    if (path.size() == inst.size()) {
      ++best.orders_evaluated;
      if (!have_best || worst < best.dstar) {
        have_best = true;
        best.dstar = worst;
        best.order.clear();
        best.schedule.crossing_times.clear();
        for (std::size_t i : path) {
          best.order.push_back(inst.platoon(i).id);
          best.schedule.crossing_times[inst.platoon(i).id] = at[i];
        }
      }
      return;
    }
    for (LaneIndex lane : by_name) {
      const auto seq = inst.lane(lane);
      if (next[lane] >= seq.size()) continue;
      const std::size_t i = seq[next[lane]];
      const Platoon& p = inst.platoon(i);
      Time start = p.release;
      for (LaneIndex o : blockers[lane]) start = max(start, lane_clear[o]);
      const Time saved = lane_clear[lane];
      at[i] = start;
      lane_clear[lane] = start + p.length;
      ++next[lane];
      path.push_back(i);
      self(self, max(worst, start - p.release));
      path.pop_back();
      --next[lane];
      lane_clear[lane] = saved;
    }
  };
  descend(descend, zero_time);
  return best;
}

} // namespace platoon
