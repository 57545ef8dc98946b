#pragma once

// Test-only helpers and independent reference computations. Nothing here
// calls the decision procedures, the search, or the admission-order oracle.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "platoon/platoon.hpp"

namespace platoon::testing {

inline Instance make(const Topology& topo, std::vector<Platoon> ps) {
  return Instance(topo, std::move(ps));
}

inline Platoon P(std::string id, std::string lane, Time::rep release, Time::rep length) {
  return Platoon{std::move(id), std::move(lane), Time(release), Time(length)};
}

inline Schedule S(std::initializer_list<std::pair<const char*, Time::rep>> items) {
  Schedule s;
  for (const auto& [id, t] : items) s.crossing_times[id] = Time(t);
  return s;
}

inline Topology ymerge() { return make_topology(TopologyKind::y_merge); }
inline Topology kmerge(int k) { return make_topology(TopologyKind::k_merge, k); }
inline Topology crossing() { return make_topology(TopologyKind::two_way_crossing); }
inline Topology multicross(int k) { return make_topology(TopologyKind::multi_cross, k); }

/// Two-platoon merge: A on m1 (release 0, length 3), B on m2 (release 1, length 2).
inline Instance merge_pair() { return make(ymerge(), {P("A", "m1", 0, 3), P("B", "m2", 1, 2)}); }

/// Long platoon ready first, short one arriving just after.
inline Instance long_short() { return make(ymerge(), {P("P", "m1", 0, 10), P("Q", "m2", 2, 1)}); }

inline Instance three_way() {
  return make(kmerge(3), {P("A", "m1", 0, 10), P("B", "m2", 3, 2), P("C", "m3", 4, 2)});
}

/// Exhaustive search over integer crossing times in [release, release + bound],
/// checking the validity conditions directly. Exponential; tiny inputs only.
/// Returns a schedule with every delay <= bound, or nullopt.
inline std::optional<Schedule> tick_search(const Instance& inst, Time bound) {
  const std::size_t n = inst.size();
  std::vector<Time> at(n);
  const Topology& topo = inst.topology();
  auto compatible = [&](std::size_t i, std::size_t j) {
    const Platoon& a = inst.platoon(i);
    const Platoon& b = inst.platoon(j);
    const Time ea = at[i] + a.length, eb = at[j] + b.length;
    if (a.lane == b.lane) {
      // FIFO: the later-released one starts after the other clears.
      return a.release < b.release ? at[j] >= ea : at[i] >= eb;
    }
    if (!topo.conflicts(a.lane, b.lane)) return true;
    return ea <= at[j] || eb <= at[i];
  };
  auto rec = [&](auto& self, std::size_t i) -> bool {
    if (i == n) return true;
    const Platoon& p = inst.platoon(i);
    for (Time t = p.release; t <= p.release + bound; t += Time(1)) {
      at[i] = t;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = compatible(i, j);
      if (ok && self(self, i + 1)) return true;
    }
    return false;
  };
  if (bound < zero_time) return n == 0 ? std::optional<Schedule>(Schedule{}) : std::nullopt;
  if (!rec(rec, 0)) return std::nullopt;
  Schedule s;
  for (std::size_t i = 0; i < n; ++i) s.crossing_times[inst.platoon(i).id] = at[i];
  return s;
}

/// Smallest bound for which tick_search succeeds.
inline Time tick_optimum(const Instance& inst) {
  for (Time d = zero_time;; d += Time(1))
    if (tick_search(inst, d)) return d;
}

/// Serialize everyone after the latest release in release order: a valid
/// schedule with delay at most L.
inline Schedule serialized_schedule(const Instance& inst) {
  std::vector<std::size_t> idx(inst.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](auto a, auto b) { return inst.platoon(a).release < inst.platoon(b).release; });
  Time latest = zero_time;
  for (const auto& p : inst.platoons()) latest = max(latest, p.release);
  Schedule s;
  Time t = latest;
  for (auto i : idx) {
    s.crossing_times[inst.platoon(i).id] = t;
    t += inst.platoon(i).length;
  }
  return s;
}

/// Tick-by-tick schedule of one lane segment starting no earlier than floor.
struct SegmentSim {
  std::vector<Time> crossings;
  Time first_delay;
  Time last_delay;
  Time completion;
};

inline SegmentSim simulate_segment(const std::vector<Platoon>& seg, Time floor) {
  SegmentSim sim;
  Time free_at = floor;
  for (const Platoon& p : seg) {
    Time t = p.release;
    while (t < free_at) t += Time(1);
    sim.crossings.push_back(t);
    free_at = t + p.length;
  }
  sim.first_delay = sim.crossings.front() - seg.front().release;
  sim.last_delay = sim.crossings.back() - seg.back().release;
  sim.completion = free_at;
  return sim;
}

/// Exhaustive subset-sum over all 2^n subsets.
inline bool partitionable(const std::vector<std::int64_t>& x) {
  std::int64_t total = 0;
  for (auto v : x) total += v;
  if (total % 2) return false;
  const std::size_t n = x.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s += x[i];
    if (2 * s == total) return true;
  }
  return false;
}

/// All multisets over [lo, hi] with size in [1, max_size], ascending.
inline std::vector<std::vector<std::int64_t>> multisets(std::int64_t lo, std::int64_t hi,
                                                        std::size_t max_size) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  auto rec = [&](auto& self, std::int64_t from) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_size) return;
    for (std::int64_t v = from; v <= hi; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, lo);
  return out;
}

/// Random instances for property tests.
inline Instance random_instance(std::mt19937_64& rng, const Topology& topo, int max_n,
                                Time::rep max_release = 30, Time::rep max_length = 6) {
  std::uniform_int_distribution<int> pick_n(0, max_n);
  return generate_instance(topo, pick_n(rng), rng(), Time(max_release), Time(max_length));
}

} // namespace platoon::testing
