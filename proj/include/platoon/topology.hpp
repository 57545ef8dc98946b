#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "platoon/error.hpp"

namespace platoon {

enum class TopologyKind { y_merge, k_merge, two_way_crossing, multi_cross };

inline std::string_view to_string(TopologyKind kind) noexcept {
  switch (kind) {
  case TopologyKind::y_merge: return "y-merge";
  case TopologyKind::k_merge: return "k-merge";
  case TopologyKind::two_way_crossing: return "two-way-crossing";
  case TopologyKind::multi_cross: return "multi-cross";
  }
  return "?";
}

inline TopologyKind parse_topology_kind(std::string_view text) {
  for (auto kind : {TopologyKind::y_merge, TopologyKind::k_merge,
                    TopologyKind::two_way_crossing, TopologyKind::multi_cross})
    if (to_string(kind) == text) return kind;
  throw InvalidArgument("unknown topology kind '" + std::string(text) + "'");
}

/// Lane index within a topology's declared lane list.
using LaneIndex = std::size_t;

/// A named intersection shape. Lanes are identified by incoming lane only;
/// the conflict relation is symmetric and irreflexive over those lanes.
///
/// Declared lane order:
///   y-merge           m1 m2
///   k-merge           m1 .. mk
///   two-way-crossing  h1 h2 v1 v2
///   multi-cross       m1 .. mk a b
class Topology {
public:
  TopologyKind kind() const noexcept { return kind_; }

  /// Present only for k-merge and multi-cross.
  std::optional<int> k() const noexcept { return k_; }

  const std::vector<std::string>& lanes() const noexcept { return lanes_; }
  std::size_t lane_count() const noexcept { return lanes_.size(); }

  std::optional<LaneIndex> find_lane(std::string_view name) const noexcept {
    for (LaneIndex i = 0; i < lanes_.size(); ++i)
      if (lanes_[i] == name) return i;
    return std::nullopt;
  }

  LaneIndex lane_index(std::string_view name) const {
    if (auto i = find_lane(name)) return *i;
    throw InvalidArgument("lane '" + std::string(name) + "' is not declared by topology " +
                          std::string(to_string(kind_)));
  }

  const std::string& lane_name(LaneIndex i) const { return lanes_.at(i); }

  bool conflicts(LaneIndex x, LaneIndex y) const noexcept {
    return conflict_[x * lanes_.size() + y] != 0;
  }

  bool conflicts(std::string_view x, std::string_view y) const {
    return conflicts(lane_index(x), lane_index(y));
  }

  friend bool operator==(const Topology& a, const Topology& b) noexcept {
    return a.kind_ == b.kind_ && a.k_ == b.k_;
  }

  friend Topology make_topology(TopologyKind kind, std::optional<int> k);

private:
  Topology() = default;

  TopologyKind kind_ = TopologyKind::y_merge;
  std::optional<int> k_;
  std::vector<std::string> lanes_;
  std::vector<char> conflict_;
};

inline Topology make_topology(TopologyKind kind, std::optional<int> k = std::nullopt) {
  const bool needs_k = kind == TopologyKind::k_merge || kind == TopologyKind::multi_cross;
  if (needs_k && !k)
    throw InvalidArgument(std::string(to_string(kind)) + " requires k");
  if (!needs_k && k)
    throw InvalidArgument(std::string(to_string(kind)) + " does not take k");
  if (k && *k < 1) throw InvalidArgument("k must be positive");

  Topology t;
  t.kind_ = kind;
  t.k_ = k;

  auto merge_lanes = [&](int count) {
    for (int i = 1; i <= count; ++i) t.lanes_.push_back("m" + std::to_string(i));
  };
  switch (kind) {
  case TopologyKind::y_merge: merge_lanes(2); break;
  case TopologyKind::k_merge: merge_lanes(*k); break;
  case TopologyKind::two_way_crossing: t.lanes_ = {"h1", "h2", "v1", "v2"}; break;
  case TopologyKind::multi_cross:
    merge_lanes(*k);
    t.lanes_.push_back("a");
    t.lanes_.push_back("b");
    break;
  }

  const std::size_t n = t.lanes_.size();
  t.conflict_.assign(n * n, 0);
  auto is_merge = [&](LaneIndex i) { return t.lanes_[i][0] == 'm'; };
  auto road = [&](LaneIndex i) { return t.lanes_[i][0]; };
  for (LaneIndex i = 0; i < n; ++i) {
    for (LaneIndex j = 0; j < n; ++j) {
      if (i == j) continue;
      bool c = false;
      switch (kind) {
      case TopologyKind::y_merge:
      case TopologyKind::k_merge: c = true; break;
      case TopologyKind::two_way_crossing: c = road(i) != road(j); break;
      case TopologyKind::multi_cross:
        c = (is_merge(i) && is_merge(j)) || t.lanes_[i] == "b" || t.lanes_[j] == "b";
        break;
      }
      t.conflict_[i * n + j] = c ? 1 : 0;
    }
  }
  return t;
}

} // namespace platoon
