#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "platoon/instance.hpp"

namespace platoon {

enum class ViolationKind { before_release, lane_overtake, cross_collision, missing_platoon, unknown_platoon };

inline std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
  case ViolationKind::before_release: return "before-release";
  case ViolationKind::lane_overtake: return "lane-overtake";
  case ViolationKind::cross_collision: return "cross-collision";
  case ViolationKind::missing_platoon: return "missing-platoon";
  case ViolationKind::unknown_platoon: return "unknown-platoon";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::vector<std::string> offenders;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::optional<Time> max_delay; // present iff violations is empty

  bool valid() const noexcept { return violations.empty(); }
};

/// crossing - release. Negative for schedules that cross early.
inline Time platoon_delay(const Instance& inst, const Schedule& sched, std::string_view id) {
  auto idx = inst.find(id);
  if (!idx) throw InvalidArgument("unknown platoon '" + std::string(id) + "'");
  auto it = sched.crossing_times.find(std::string(id));
  if (it == sched.crossing_times.end())
    throw InvalidArgument("platoon '" + std::string(id) + "' is not scheduled");
  return it->second - inst.platoon(*idx).release;
}

/// Maximum per-platoon delay; 0 for the empty instance.
inline Time max_delay(const Instance& inst, const Schedule& sched) {
  Time worst = zero_time;
  for (const Platoon& p : inst.platoons()) worst = max(worst, platoon_delay(inst, sched, p.id));
  return worst;
}

/// Reports every violated validity condition. Same-lane order is enforced
/// against the predecessor's crossing (no overtaking); conflicting platoons
/// must have disjoint open occupancy intervals, so touching end-to-start is
/// legal.
inline ValidationReport check_valid(const Instance& inst, const Schedule& sched) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::vector<std::string> who, std::string detail) {
    report.violations.push_back(Violation{kind, std::move(who), std::move(detail)});
  };

  std::vector<std::optional<Time>> crossing(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Platoon& p = inst.platoon(i);
    auto it = sched.crossing_times.find(p.id);
    if (it == sched.crossing_times.end()) {
      add(ViolationKind::missing_platoon, {p.id}, p.id + " has no crossing time");
      continue;
    }
    crossing[i] = it->second;
    if (it->second < p.release)
      add(ViolationKind::before_release, {p.id},
          p.id + " crosses at " + std::to_string(it->second.value()) + " before release " +
              std::to_string(p.release.value()));
  }
  for (const auto& [id, _] : sched.crossing_times)
    if (!inst.find(id)) add(ViolationKind::unknown_platoon, {id}, id + " is not in the instance");

  for (LaneIndex lane = 0; lane < inst.topology().lane_count(); ++lane) {
    auto seq = inst.lane(lane);
    for (std::size_t j = 1; j < seq.size(); ++j) {
      const std::size_t a = seq[j - 1], b = seq[j];
      if (!crossing[a] || !crossing[b]) continue;
      const Time free_at = *crossing[a] + inst.platoon(a).length;
      if (*crossing[b] < free_at)
        add(ViolationKind::lane_overtake, {inst.platoon(a).id, inst.platoon(b).id},
            inst.platoon(b).id + " crosses at " + std::to_string(crossing[b]->value()) +
                " before " + inst.platoon(a).id + " clears at " + std::to_string(free_at.value()));
    }
  }

  for (std::size_t a = 0; a < inst.size(); ++a) {
    for (std::size_t b = a + 1; b < inst.size(); ++b) {
      if (!crossing[a] || !crossing[b]) continue;
      if (!inst.topology().conflicts(inst.lane_of(a), inst.lane_of(b))) continue;
      const Time start = max(*crossing[a], *crossing[b]);
      const Time end = min(*crossing[a] + inst.platoon(a).length,
                           *crossing[b] + inst.platoon(b).length);
      if (start < end)
        add(ViolationKind::cross_collision, {inst.platoon(a).id, inst.platoon(b).id},
            inst.platoon(a).id + " and " + inst.platoon(b).id + " occupy the intersection together during (" +
                std::to_string(start.value()) + "," + std::to_string(end.value()) + ")");
    }
  }

  if (report.violations.empty()) report.max_delay = max_delay(inst, sched);
  return report;
}

} // namespace platoon
