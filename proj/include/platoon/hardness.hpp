#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "platoon/error.hpp"
#include "platoon/instance.hpp"
#include "platoon/validate.hpp"

namespace platoon {

/// Multi-cross instance encoding a PARTITION input.
struct Reduction {
  Instance instance;
  ReductionMeta meta;
};

/// Id of the i-th platoon of a reduction instance (1-based): p1 on a,
/// p2 on b, p3 the long merge platoon, p4.. one per input integer.
inline std::string reduction_id(std::size_t i) { return "p" + std::to_string(i); }

/// Builds the multi-cross instance for `x`, with q = sum/2, d_max = 2q+1 and
/// k = |x| + 1 merge lanes. Returns nullopt when the sum is odd, since no
/// equal split can exist.
///   p1  lane a        release 0   length 4(q+1)
///   p2  lane b        release 2q  length 1
///   p3  lane m(l+1)   release q   length 4(q+1)
///   p(3+i) lane m(i)  release q   length x(i)
inline std::optional<Reduction> reduce_partition(std::span<const std::int64_t> x) {
  if (x.empty()) throw InvalidArgument("partition input must be non-empty");
  Time total = zero_time;
  for (auto v : x) {
    if (v < 1) throw InvalidArgument("partition entries must be positive");
    total += Time(v);
  }
  if (total.value() % 2 != 0) return std::nullopt;

  const Time q(total.value() / 2);
  const Time q1 = q + Time(1);
  const Time long_length = q1 + q1 + q1 + q1;
  const int ell = static_cast<int>(x.size());

  std::vector<Platoon> platoons;
  platoons.push_back({reduction_id(1), "a", zero_time, long_length});
  platoons.push_back({reduction_id(2), "b", q + q, Time(1)});
  platoons.push_back({reduction_id(3), "m" + std::to_string(ell + 1), q, long_length});
  for (int i = 0; i < ell; ++i)
    platoons.push_back({reduction_id(4 + i), "m" + std::to_string(i + 1), q, Time(x[i])});

  ReductionMeta meta{std::vector<std::int64_t>(x.begin(), x.end()), q, q + q + Time(1)};
  Instance inst(make_topology(TopologyKind::multi_cross, ell + 1), std::move(platoons), meta);
  return Reduction{std::move(inst), std::move(meta)};
}

/// True iff u and v together are exactly x (as multisets) and have equal sums.
inline bool check_partition(std::vector<std::int64_t> x, std::vector<std::int64_t> u,
                            std::vector<std::int64_t> v) {
  std::vector<std::int64_t> joined = u;
  joined.insert(joined.end(), v.begin(), v.end());
  std::sort(joined.begin(), joined.end());
  std::sort(x.begin(), x.end());
  if (joined != x) return false;
  return std::accumulate(u.begin(), u.end(), std::int64_t{0}) ==
         std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

struct Partition {
  std::vector<std::int64_t> u; // integers whose platoons cross before p2
  std::vector<std::int64_t> v;
};

/// Reads a partition off a valid schedule of a reduction instance. Returns
/// nullopt when the schedule's delay exceeds d_max. Throws if the schedule is
/// invalid or the instance does not match the metadata.
inline std::optional<Partition> extract_partition(const ReductionMeta& meta, const Instance& inst,
                                                  const Schedule& sched) {
  auto rebuilt = reduce_partition(meta.x);
  if (!rebuilt || rebuilt->meta != meta || rebuilt->instance.topology() != inst.topology())
    throw InvalidArgument("reduction metadata does not match the instance");
  for (const Platoon& p : rebuilt->instance.platoons()) {
    auto idx = inst.find(p.id);
    if (!idx || inst.platoon(*idx) != p)
      throw InvalidArgument("instance platoon '" + p.id + "' does not match the reduction");
  }
  if (inst.size() != rebuilt->instance.size())
    throw InvalidArgument("instance has platoons outside the reduction");

  const ValidationReport report = check_valid(inst, sched);
  if (!report.valid()) throw InvalidArgument("schedule is not valid: " + report.violations.front().detail);
  if (*report.max_delay > meta.d_max) return std::nullopt;

  const Time cut = sched.crossing_times.at(reduction_id(2));
  Partition part;
  for (std::size_t i = 0; i < meta.x.size(); ++i) {
    const Time at = sched.crossing_times.at(reduction_id(4 + i));
    (at < cut ? part.u : part.v).push_back(meta.x[i]);
  }
  if (!check_partition(meta.x, part.u, part.v))
    throw ContractViolation("schedule within d_max did not split the input evenly");
  return part;
}

} // namespace platoon
