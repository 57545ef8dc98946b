#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "platoon/error.hpp"
#include "platoon/time.hpp"
#include "platoon/topology.hpp"

namespace platoon {

/// One indivisible traffic unit.
struct Platoon {
  std::string id;
  std::string lane;
  Time release;
  Time length;

  friend bool operator==(const Platoon&, const Platoon&) = default;
};

/// Provenance of an instance built from a PARTITION input.
struct ReductionMeta {
  std::vector<std::int64_t> x;
  Time q;
  Time d_max;

  friend bool operator==(const ReductionMeta&, const ReductionMeta&) = default;
};

/// Immutable, validated scheduling problem. Construction enforces unique
/// ids, declared lanes, length >= 1, release >= 0 and per-lane disjoint
/// undelayed occupancy [release, release + length).
class Instance {
public:
  Instance(Topology topology, std::vector<Platoon> platoons,
           std::optional<ReductionMeta> meta = std::nullopt)
      : topology_(std::move(topology)), platoons_(std::move(platoons)), meta_(std::move(meta)) {
    lane_of_.reserve(platoons_.size());
    by_lane_.assign(topology_.lane_count(), {});
    for (std::size_t i = 0; i < platoons_.size(); ++i) {
      const Platoon& p = platoons_[i];
      if (p.id.empty()) throw InvalidArgument("platoon id must be non-empty");
      if (!index_.emplace(p.id, i).second)
        throw InvalidArgument("duplicate platoon id '" + p.id + "'");
      if (p.length < Time(1))
        throw InvalidArgument("platoon '" + p.id + "' has non-positive length");
      if (p.release < zero_time)
        throw InvalidArgument("platoon '" + p.id + "' has negative release");
      (void)(p.release + p.length); // overflow check
      const LaneIndex lane = topology_.lane_index(p.lane);
      lane_of_.push_back(lane);
      by_lane_[lane].push_back(i);
    }
    for (auto& seq : by_lane_) {
      std::sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
        return platoons_[a].release < platoons_[b].release;
      });
      for (std::size_t j = 1; j < seq.size(); ++j) {
        const Platoon& prev = platoons_[seq[j - 1]];
        const Platoon& next = platoons_[seq[j]];
        if (next.release < prev.release + prev.length)
          throw InvalidArgument("platoons '" + prev.id + "' and '" + next.id +
                                "' overlap on lane " + prev.lane);
      }
    }
  }

  const Topology& topology() const noexcept { return topology_; }
  const std::vector<Platoon>& platoons() const noexcept { return platoons_; }
  const std::optional<ReductionMeta>& meta() const noexcept { return meta_; }

  std::size_t size() const noexcept { return platoons_.size(); }
  bool empty() const noexcept { return platoons_.empty(); }

  const Platoon& platoon(std::size_t i) const { return platoons_.at(i); }
  LaneIndex lane_of(std::size_t i) const { return lane_of_.at(i); }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Platoon indices on `lane`, ascending by release (strict FIFO order).
  std::span<const std::size_t> lane(LaneIndex lane) const { return by_lane_.at(lane); }

private:
  Topology topology_;
  std::vector<Platoon> platoons_;
  std::optional<ReductionMeta> meta_;
  std::vector<LaneIndex> lane_of_;
  std::vector<std::vector<std::size_t>> by_lane_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// L = max release + sum of lengths; 0 for the empty instance.
inline Time schedule_length(const Instance& inst) {
  if (inst.empty()) return zero_time;
  Time latest = zero_time;
  Time total = zero_time;
  for (const Platoon& p : inst.platoons()) {
    latest = max(latest, p.release);
    total += p.length;
  }
  return latest + total;
}

inline Time earliest_release(const Instance& inst) {
  if (inst.empty()) return zero_time;
  Time t = inst.platoons().front().release;
  for (const Platoon& p : inst.platoons()) t = min(t, p.release);
  return t;
}

inline std::vector<Platoon> lane_sequence(const Instance& inst, std::string_view lane) {
  std::vector<Platoon> out;
  for (std::size_t i : inst.lane(inst.topology().lane_index(lane)))
    out.push_back(inst.platoon(i));
  return out;
}

/// Crossing time per platoon id.
struct Schedule {
  std::map<std::string, Time> crossing_times;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

} // namespace platoon
