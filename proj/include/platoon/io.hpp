#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "platoon/error.hpp"
#include "platoon/instance.hpp"

namespace platoon {

using Json = nlohmann::ordered_json;

namespace detail {

inline void require_object(const Json& j, std::string_view what,
                           std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ParseError("unknown field '" + key + "' in " + std::string(what));
  }
}

inline const Json& field(const Json& j, std::string_view what, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError("missing field '" + std::string(key) + "' in " + std::string(what));
  return *it;
}

inline std::int64_t integer(const Json& j, std::string_view what) {
  if (j.is_number_unsigned()) {
    auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      throw ParseError(std::string(what) + " is out of range");
    return static_cast<std::int64_t>(v);
  }
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

inline std::string string(const Json& j, std::string_view what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

} // namespace detail

inline Json meta_to_json(const ReductionMeta& m) {
  Json j;
  j["reduction"] = "partition";
  j["x"] = m.x;
  j["q"] = m.q.value();
  j["d_max"] = m.d_max.value();
  return j;
}

inline Json instance_to_json(const Instance& inst) {
  Json j;
  Json topo;
  topo["kind"] = to_string(inst.topology().kind());
  if (auto k = inst.topology().k()) topo["k"] = *k;
  j["topology"] = std::move(topo);
  j["platoons"] = Json::array();
  for (const Platoon& p : inst.platoons()) {
    Json pj;
    pj["id"] = p.id;
    pj["lane"] = p.lane;
    pj["release"] = p.release.value();
    pj["length"] = p.length.value();
    j["platoons"].push_back(std::move(pj));
  }
  if (inst.meta()) j["meta"] = meta_to_json(*inst.meta());
  return j;
}

inline Json schedule_to_json(const Schedule& s) {
  Json times = Json::object();
  for (const auto& [id, t] : s.crossing_times) times[id] = t.value();
  Json j;
  j["crossing_times"] = std::move(times);
  return j;
}

/// Parses and validates an instance. Structural problems raise ParseError;
/// domain invariant violations raise InvalidArgument.
inline Instance instance_from_json(const Json& j) {
  using namespace detail;
  require_object(j, "instance", {"topology", "platoons", "meta"});

  const Json& tj = field(j, "instance", "topology");
  require_object(tj, "topology", {"kind", "k"});
  const TopologyKind kind = parse_topology_kind(string(field(tj, "topology", "kind"), "kind"));
  std::optional<int> k;
  if (tj.contains("k")) {
    auto v = integer(tj["k"], "k");
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw ParseError("k is out of range");
    k = static_cast<int>(v);
  }
  Topology topology = make_topology(kind, k);

  const Json& pj = field(j, "instance", "platoons");
  if (!pj.is_array()) throw ParseError("platoons must be an array");
  std::vector<Platoon> platoons;
  platoons.reserve(pj.size());
  for (const Json& e : pj) {
    require_object(e, "platoon", {"id", "lane", "release", "length"});
    platoons.push_back(Platoon{string(field(e, "platoon", "id"), "id"),
                               string(field(e, "platoon", "lane"), "lane"),
                               Time(integer(field(e, "platoon", "release"), "release")),
                               Time(integer(field(e, "platoon", "length"), "length"))});
  }

  std::optional<ReductionMeta> meta;
  if (j.contains("meta")) {
    const Json& mj = j["meta"];
    require_object(mj, "meta", {"reduction", "x", "q", "d_max"});
    if (string(field(mj, "meta", "reduction"), "reduction") != "partition")
      throw ParseError("unsupported reduction kind");
    const Json& xs = field(mj, "meta", "x");
    if (!xs.is_array()) throw ParseError("meta.x must be an array");
    ReductionMeta m;
    for (const Json& x : xs) m.x.push_back(integer(x, "meta.x"));
    m.q = Time(integer(field(mj, "meta", "q"), "q"));
    m.d_max = Time(integer(field(mj, "meta", "d_max"), "d_max"));
    meta = std::move(m);
  }
  return Instance(std::move(topology), std::move(platoons), std::move(meta));
}

inline Schedule schedule_from_json(const Json& j) {
  using namespace detail;
  require_object(j, "schedule", {"crossing_times"});
  const Json& times = field(j, "schedule", "crossing_times");
  if (!times.is_object()) throw ParseError("crossing_times must be an object");
  Schedule s;
  for (const auto& [id, t] : times.items())
    s.crossing_times.emplace(id, Time(integer(t, "crossing time of '" + id + "'")));
  return s;
}

inline Instance load_instance(std::string_view text) {
  return instance_from_json(detail::parse(text));
}

inline std::string save_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline Schedule load_schedule(std::string_view text) {
  return schedule_from_json(detail::parse(text));
}

inline std::string save_schedule(const Schedule& s) { return schedule_to_json(s).dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

} // namespace platoon
