#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "platoon/instance.hpp"

namespace platoon {

/// Deterministic random instance. Each platoon gets a uniform lane and a
/// length in [1, max_length]. Per lane, offsets are drawn in
/// [0, max_release] and sorted; a platoon's release is its offset plus the
/// lengths of the platoons ahead of it, so lane occupancy is disjoint by
/// construction and the gap between neighbours is the offset difference.
inline Instance generate_instance(const Topology& topology, std::int64_t n, std::uint64_t seed,
                                  Time max_release, Time max_length) {
  if (n < 0) throw InvalidArgument("platoon count must be non-negative");
  if (max_length < Time(1)) throw InvalidArgument("max_length must be at least 1");
  if (max_release < zero_time) throw InvalidArgument("max_release must be non-negative");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_lane(0, topology.lane_count() - 1);
  std::uniform_int_distribution<Time::rep> pick_length(1, max_length.value());
  std::uniform_int_distribution<Time::rep> pick_offset(0, max_release.value());

  std::vector<Platoon> platoons(static_cast<std::size_t>(n));
  std::vector<std::vector<std::size_t>> members(topology.lane_count());
  for (std::size_t i = 0; i < platoons.size(); ++i) {
    const std::size_t lane = pick_lane(rng);
    platoons[i].id = "p" + std::to_string(i + 1);
    platoons[i].lane = topology.lane_name(lane);
    platoons[i].length = Time(pick_length(rng));
    members[lane].push_back(i);
  }
  for (const auto& lane : members) {
    std::vector<Time::rep> offsets(lane.size());
    for (auto& o : offsets) o = pick_offset(rng);
    std::sort(offsets.begin(), offsets.end());
    Time ahead = zero_time;
    for (std::size_t j = 0; j < lane.size(); ++j) {
      Platoon& p = platoons[lane[j]];
      p.release = Time(offsets[j]) + ahead;
      ahead += p.length;
    }
  }
  return Instance(topology, std::move(platoons));
}

} // namespace platoon
