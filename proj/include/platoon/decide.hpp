#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "platoon/error.hpp"
#include "platoon/instance.hpp"
#include "platoon/probe.hpp"

namespace platoon {

/// Result of a decision procedure: a schedule meeting the bound, or nothing.
class Outcome {
public:
  static Outcome feasible(Schedule s) { return Outcome(std::move(s)); }
  static Outcome infeasible() { return Outcome(); }

  bool is_feasible() const noexcept { return schedule_.has_value(); }
  explicit operator bool() const noexcept { return is_feasible(); }

  const Schedule& schedule() const {
    if (!schedule_) throw ContractViolation("infeasible outcome has no schedule");
    return *schedule_;
  }

  friend bool operator==(const Outcome&, const Outcome&) = default;

private:
  Outcome() = default;
  explicit Outcome(Schedule s) : schedule_(std::move(s)) {}

  std::optional<Schedule> schedule_;
};

// ---------------------------------------------------------------------------
// State space shared by the two dynamic programs.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::size_t max_dp_states = 50'000'000;

/// Mixed-radix encoding of per-lane crossed counts, lane 0 most significant,
/// so index order is lexicographic order on count tuples.
class CountSpace {
public:
  explicit CountSpace(const Instance& inst) {
    const std::size_t k = inst.topology().lane_count();
    radix_.resize(k);
    stride_.resize(k);
    std::size_t total = 1;
    for (std::size_t i = k; i-- > 0;) {
      radix_[i] = inst.lane(i).size() + 1;
      stride_[i] = total;
      if (total > max_dp_states / radix_[i])
        throw InvalidArgument("state space too large for dynamic programming");
      total *= radix_[i];
    }
    size_ = total;

    // Ascending total count, lexicographic within a total.
    order_.resize(size_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<std::size_t> sum(size_);
    for (std::size_t s = 0; s < size_; ++s)
      for (std::size_t i = 0; i < k; ++i) sum[s] += count(s, i);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return sum[a] < sum[b]; });
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t lanes() const noexcept { return radix_.size(); }
  std::size_t stride(std::size_t lane) const noexcept { return stride_[lane]; }
  std::size_t count(std::size_t state, std::size_t lane) const noexcept {
    return state / stride_[lane] % radix_[lane];
  }
  std::size_t full() const noexcept { return size_ - 1; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }

private:
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> stride_;
  std::vector<std::size_t> order_;
  std::size_t size_ = 1;
};

inline bool is_merge(const Topology& t) noexcept {
  return t.kind() == TopologyKind::y_merge || t.kind() == TopologyKind::k_merge;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Two-lane greedy.
// ---------------------------------------------------------------------------

/// Greedy decision procedure for a Y merge (or a 2-way merge). At each step
/// the earlier-released of the two lane heads (ties to m1) crosses unless
/// doing so would delay the other head beyond the bound. The finished
/// schedule is then checked platoon by platoon through the probe.
template <DelayProbe P>
Outcome decide_y(const Instance& inst, P& probe) {
  const Topology& topo = inst.topology();
  if (!(topo.kind() == TopologyKind::y_merge || (topo.kind() == TopologyKind::k_merge && topo.k() == 2)))
    throw InvalidArgument("greedy decision requires a y-merge or a 2-way merge");

  Schedule sched;
  if (inst.empty()) return Outcome::feasible(std::move(sched));

  const std::array<std::span<const std::size_t>, 2> lanes{inst.lane(0), inst.lane(1)};
  std::array<std::size_t, 2> next{0, 0};
  std::vector<std::size_t> crossed;
  crossed.reserve(inst.size());

  Time free_at = earliest_release(inst);
  auto cross = [&](std::size_t lane) {
    const std::size_t idx = lanes[lane][next[lane]++];
    const Platoon& p = inst.platoon(idx);
    const Time at = max(free_at, p.release);
    sched.crossing_times[p.id] = at;
    free_at = at + p.length;
    crossed.push_back(idx);
  };

  while (next[0] < lanes[0].size() && next[1] < lanes[1].size()) {
    const Platoon& head0 = inst.platoon(lanes[0][next[0]]);
    const Platoon& head1 = inst.platoon(lanes[1][next[1]]);
    const std::size_t first = head1.release < head0.release ? 1 : 0;
    const Platoon& pi = first == 0 ? head0 : head1;
    const Platoon& pj = first == 0 ? head1 : head0;
    const Time induced = max(zero_time, max(free_at, pi.release) + pi.length - pj.release);
    cross(probe.at_most(induced) ? first : 1 - first);
  }
  for (std::size_t lane = 0; lane < 2; ++lane)
    while (next[lane] < lanes[lane].size()) cross(lane);

  for (std::size_t idx : crossed) {
    const Platoon& p = inst.platoon(idx);
    if (!probe.at_most(sched.crossing_times[p.id] - p.release)) return Outcome::infeasible();
  }
  return Outcome::feasible(std::move(sched));
}

// ---------------------------------------------------------------------------
// k-way merge dynamic program.
// ---------------------------------------------------------------------------

/// One k-way merge DP state: crossed counts per lane, the earliest
/// completion time t (absent when unreachable within the bound) and the lane
/// whose platoon crossed last on the best path.
struct MergeState {
  std::vector<std::size_t> counts;
  std::optional<Time> t;
  std::optional<LaneIndex> back;
};

namespace detail {

struct MergeTable {
  CountSpace space;
  std::vector<std::optional<Time>> t;
  std::vector<std::size_t> back;
};

/// t(s) is the earliest time at which every platoon in s has cleared the
/// merge with each of them delayed within the bound; exactly one platoon is
/// added per transition.
template <DelayProbe P>
MergeTable run_merge_dp(const Instance& inst, P& probe) {
  if (!is_merge(inst.topology()))
    throw InvalidArgument("merge dynamic program requires a y-merge or k-merge");

  MergeTable tab{CountSpace(inst), {}, {}};
  const CountSpace& space = tab.space;
  const std::size_t k = space.lanes();
  auto& t = tab.t;
  auto& back = tab.back;
  t.resize(space.size());
  back.assign(space.size(), k);
  t[0] = earliest_release(inst);

  for (std::size_t s : space.order()) {
    if (s == 0) continue;
    for (std::size_t lane = 0; lane < k; ++lane) {
      const std::size_t c = space.count(s, lane);
      if (c == 0) continue;
      const std::size_t pred = s - space.stride(lane);
      if (!t[pred]) continue;
      const Platoon& p = inst.platoon(inst.lane(lane)[c - 1]);
      const Time at = max(*t[pred], p.release);
      if (!probe.at_most(at - p.release)) continue;
      const Time done = at + p.length;
      if (!t[s] || done < *t[s]) {
        t[s] = done;
        back[s] = lane;
      }
    }
  }
  return tab;
}

} // namespace detail

/// Every merge DP state in evaluation order (ascending total, then
/// lexicographic counts).
template <DelayProbe P>
std::vector<MergeState> merge_states(const Instance& inst, P& probe) {
  const detail::MergeTable tab = detail::run_merge_dp(inst, probe);
  std::vector<MergeState> out;
  out.reserve(tab.space.size());
  for (std::size_t s : tab.space.order()) {
    MergeState st;
    for (std::size_t l = 0; l < tab.space.lanes(); ++l) st.counts.push_back(tab.space.count(s, l));
    st.t = tab.t[s];
    if (tab.back[s] < tab.space.lanes()) st.back = tab.back[s];
    out.push_back(std::move(st));
  }
  return out;
}

/// Dynamic program over per-lane crossed counts for a k-way merge; the
/// schedule is rebuilt by following back-pointers from the all-crossed state.
template <DelayProbe P>
Outcome decide_kmerge(const Instance& inst, P& probe) {
  const detail::MergeTable tab = detail::run_merge_dp(inst, probe);
  const detail::CountSpace& space = tab.space;
  if (!tab.t[space.full()]) return Outcome::infeasible();

  Schedule sched;
  for (std::size_t s = space.full(); s != 0;) {
    const std::size_t lane = tab.back[s];
    const std::size_t pred = s - space.stride(lane);
    const Platoon& p = inst.platoon(inst.lane(lane)[space.count(s, lane) - 1]);
    sched.crossing_times[p.id] = max(*tab.t[pred], p.release);
    s = pred;
  }
  return Outcome::feasible(std::move(sched));
}

// ---------------------------------------------------------------------------
// Two-way crossing dynamic program.
// ---------------------------------------------------------------------------

/// Prefix sums of the idle gaps between consecutive platoons on one lane.
/// gaps[j] = release[j+1] - (release[j] + length[j]); prefix[j] = sum of
/// gaps[0..j).
struct GapPrefix {
  std::vector<Time> gaps;
  std::vector<Time> prefix;

  /// Total idle time between platoon `first` and platoon `last` (inclusive
  /// indices within the lane).
  Time between(std::size_t first, std::size_t last) const { return prefix[last] - prefix[first]; }
};

inline GapPrefix lane_gap_prefix(std::span<const Platoon> seq) {
  GapPrefix g;
  if (seq.empty()) return g;
  g.prefix.push_back(zero_time);
  for (std::size_t j = 1; j < seq.size(); ++j) {
    const Time gap = seq[j].release - (seq[j - 1].release + seq[j - 1].length);
    if (gap < zero_time) throw InvalidArgument("lane sequence overlaps");
    g.gaps.push_back(gap);
    g.prefix.push_back(g.prefix.back() + gap);
  }
  return g;
}

/// Per-lane release/length arrays plus gap prefix sums.
struct LaneTrack {
  std::vector<Time> release;
  std::vector<Time> length;
  GapPrefix gaps;

  static LaneTrack from(std::span<const Platoon> seq) {
    LaneTrack track;
    for (const Platoon& p : seq) {
      track.release.push_back(p.release);
      track.length.push_back(p.length);
    }
    track.gaps = lane_gap_prefix(seq);
    return track;
  }
};

/// Contiguous run [first, end) of one lane's platoons.
struct LaneSegment {
  const LaneTrack* track = nullptr;
  std::size_t first = 0;
  std::size_t end = 0;

  bool empty() const noexcept { return first >= end; }
};

struct PhaseResult {
  bool admissible = false;
  Time completion;
};

/// Schedules non-conflicting lane segments as early as possible from
/// `floor`, in constant time per segment. The first platoon of a segment is
/// the most delayed one; delay then shrinks by each gap it meets:
/// last delay = max(0, first delay - sum of gaps).
template <DelayProbe P>
PhaseResult greedy_phase(std::span<const LaneSegment> segments, Time floor, P& probe) {
  PhaseResult result{true, floor};
  for (const LaneSegment& seg : segments) {
    if (seg.empty()) continue;
    const LaneTrack& lane = *seg.track;
    const Time first_delay = max(zero_time, floor - lane.release[seg.first]);
    if (!probe.at_most(first_delay)) return PhaseResult{false, floor};
    const std::size_t last = seg.end - 1;
    const Time last_delay = max(zero_time, first_delay - lane.gaps.between(seg.first, last));
    result.completion = max(result.completion, lane.release[last] + lane.length[last] + last_delay);
  }
  return result;
}

/// One two-way crossing DP state over (h1, h2, v1, v2) crossed counts. `back`
/// names the predecessor counts and the road (0 = h, 1 = v) of the last phase.
struct CrossState {
  std::array<std::size_t, 4> counts{};
  std::optional<Time> t;
  struct Back {
    std::array<std::size_t, 4> counts{};
    std::size_t road = 0;
  };
  std::optional<Back> back;
};

namespace detail {

struct CrossTable {
  CountSpace space;
  std::vector<std::optional<Time>> t;
  struct Back {
    std::size_t pred = 0;
    std::size_t road = 0;
  };
  std::vector<Back> back;
};

/// A transition adds a contiguous batch on both lanes of one road, scheduled
/// by greedy_phase from the predecessor's completion time. Ties keep the
/// first candidate: road h before v, then ascending predecessor counts.
template <DelayProbe P>
CrossTable run_crossing_dp(const Instance& inst, P& probe) {
  if (inst.topology().kind() != TopologyKind::two_way_crossing)
    throw InvalidArgument("crossing dynamic program requires a two-way-crossing topology");

  std::array<LaneTrack, 4> tracks;
  for (LaneIndex lane = 0; lane < 4; ++lane)
    tracks[lane] = LaneTrack::from(lane_sequence(inst, inst.topology().lane_name(lane)));

  CrossTable tab{CountSpace(inst), {}, {}};
  const CountSpace& space = tab.space;
  auto& t = tab.t;
  t.resize(space.size());
  tab.back.resize(space.size());
  t[0] = earliest_release(inst);

  for (std::size_t s : space.order()) {
    if (s == 0) continue;
    for (std::size_t road = 0; road < 2; ++road) {
      const std::size_t la = 2 * road, lb = 2 * road + 1;
      const std::size_t ca = space.count(s, la), cb = space.count(s, lb);
      for (std::size_t a = 0; a <= ca; ++a) {
        for (std::size_t b = 0; b <= cb; ++b) {
          if (a == ca && b == cb) continue;
          const std::size_t pred = s - (ca - a) * space.stride(la) - (cb - b) * space.stride(lb);
          if (!t[pred]) continue;
          const std::array<LaneSegment, 2> segs{LaneSegment{&tracks[la], a, ca},
                                                LaneSegment{&tracks[lb], b, cb}};
          const PhaseResult phase = greedy_phase(std::span<const LaneSegment>(segs), *t[pred], probe);
          if (!phase.admissible) continue;
          if (!t[s] || phase.completion < *t[s]) {
            t[s] = phase.completion;
            tab.back[s] = CrossTable::Back{pred, road};
          }
        }
      }
    }
  }
  return tab;
}

} // namespace detail

template <DelayProbe P>
std::vector<CrossState> cross_states(const Instance& inst, P& probe) {
  const detail::CrossTable tab = detail::run_crossing_dp(inst, probe);
  auto counts = [&](std::size_t s) {
    std::array<std::size_t, 4> c{};
    for (std::size_t l = 0; l < 4; ++l) c[l] = tab.space.count(s, l);
    return c;
  };
  std::vector<CrossState> out;
  out.reserve(tab.space.size());
  for (std::size_t s : tab.space.order()) {
    CrossState st;
    st.counts = counts(s);
    st.t = tab.t[s];
    if (s != 0 && tab.t[s]) st.back = CrossState::Back{counts(tab.back[s].pred), tab.back[s].road};
    out.push_back(st);
  }
  return out;
}

/// Two-way crossing decision. The schedule is rebuilt phase by phase: within
/// a phase each platoon crosses at max(floor, release, lane predecessor's
/// clear time).
template <DelayProbe P>
Outcome decide_crossing(const Instance& inst, P& probe) {
  const detail::CrossTable tab = detail::run_crossing_dp(inst, probe);
  const detail::CountSpace& space = tab.space;
  if (!tab.t[space.full()]) return Outcome::infeasible();

  Schedule sched;
  for (std::size_t s = space.full(); s != 0;) {
    const auto& b = tab.back[s];
    const Time floor = *tab.t[b.pred];
    for (std::size_t lane : {2 * b.road, 2 * b.road + 1}) {
      const auto seq = inst.lane(lane);
      Time free_at = floor;
      for (std::size_t j = space.count(b.pred, lane); j < space.count(s, lane); ++j) {
        const Platoon& p = inst.platoon(seq[j]);
        const Time at = max(free_at, p.release);
        sched.crossing_times[p.id] = at;
        free_at = at + p.length;
      }
    }
    s = b.pred;
  }
  return Outcome::feasible(std::move(sched));
}

// ---------------------------------------------------------------------------
// Decider objects: generic over the probe so the parametric search can drive
// them with concrete or simulated bounds.
// ---------------------------------------------------------------------------

struct GreedyMergeDecider {
  static constexpr std::string_view name = "greedy";
  template <DelayProbe P>
  Outcome operator()(const Instance& inst, P& probe) const {
    return decide_y(inst, probe);
  }
};

struct MergeDpDecider {
  static constexpr std::string_view name = "merge-dp";
  template <DelayProbe P>
  Outcome operator()(const Instance& inst, P& probe) const {
    return decide_kmerge(inst, probe);
  }
};

struct CrossingDpDecider {
  static constexpr std::string_view name = "crossing-dp";
  template <DelayProbe P>
  Outcome operator()(const Instance& inst, P& probe) const {
    return decide_crossing(inst, probe);
  }
};

using AnyDecider = std::variant<GreedyMergeDecider, MergeDpDecider, CrossingDpDecider>;

enum class Algorithm { automatic, greedy, dp };

inline Algorithm parse_algorithm(std::string_view text) {
  if (text == "auto") return Algorithm::automatic;
  if (text == "greedy") return Algorithm::greedy;
  if (text == "dp") return Algorithm::dp;
  throw InvalidArgument("unknown algorithm '" + std::string(text) + "'");
}

/// Picks the decision procedure for a topology. Multi-cross has none.
inline AnyDecider select_decider(const Topology& topo, Algorithm algo = Algorithm::automatic) {
  switch (topo.kind()) {
  case TopologyKind::multi_cross:
    throw InvalidArgument("multi-cross has no polynomial decision procedure; use the oracle");
  case TopologyKind::two_way_crossing:
    if (algo == Algorithm::greedy) throw InvalidArgument("greedy applies only to two-lane merges");
    return CrossingDpDecider{};
  case TopologyKind::y_merge:
    if (algo == Algorithm::dp) return MergeDpDecider{};
    return GreedyMergeDecider{};
  case TopologyKind::k_merge:
    if (algo == Algorithm::greedy) {
      if (topo.k() != 2) throw InvalidArgument("greedy applies only to two-lane merges");
      return GreedyMergeDecider{};
    }
    return MergeDpDecider{};
  }
  throw InvalidArgument("unsupported topology");
}

} // namespace platoon
