#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "platoon/decide.hpp"
#include "platoon/generate.hpp"
#include "platoon/hardness.hpp"
#include "platoon/io.hpp"
#include "platoon/oracle.hpp"
#include "platoon/search.hpp"
#include "platoon/validate.hpp"

namespace platoon::cli {

enum ExitCode : int { ok = 0, negative = 1, failure = 2 };

namespace detail {

inline std::string_view decider_name(const AnyDecider& d) {
  return std::visit([](const auto& dec) { return dec.name; }, d);
}

inline std::vector<std::int64_t> parse_set(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad integer '" + item + "' in --set");
    }
    if (used != item.size()) throw InvalidArgument("bad integer '" + item + "' in --set");
    out.push_back(v);
  }
  return out;
}

inline Json violations_json(const ValidationReport& report) {
  Json arr = Json::array();
  for (const Violation& v : report.violations) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["offenders"] = v.offenders;
    j["detail"] = v.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline void emit(std::ostream& out, const Json& report) { out << report.dump() << "\n"; }

} // namespace detail

/// Runs one subcommand. `args` excludes the program name. The report goes
/// to `out` as a single JSON object; diagnostics go to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-maximum-delay platoon scheduling at a single intersection", "platoon"};
  app.require_subcommand(1);

  std::string instance_path, schedule_path, emit_path, out_path, set_text;
  std::string algorithm = "auto", strategy = "hybrid", kind;
  std::int64_t delay = 0, n = 0, max_release = 0, max_length = 0;
  std::uint64_t seed = 0, max_orders = default_order_cap;
  std::optional<int> k;

  auto* decide = app.add_subcommand("decide", "Test whether a schedule within a delay bound exists");
  decide->add_option("--instance", instance_path)->required();
  decide->add_option("--delay", delay)->required();
  decide->add_option("--algorithm", algorithm)->check(CLI::IsMember({"auto", "greedy", "dp"}));

  auto* solve = app.add_subcommand("solve", "Compute a minimum-delay schedule");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--strategy", strategy)->check(CLI::IsMember({"hybrid", "bisect", "comparison"}));
  solve->add_option("--emit", emit_path);

  auto* validate = app.add_subcommand("validate", "Check a schedule against an instance");
  validate->add_option("--instance", instance_path)->required();
  validate->add_option("--schedule", schedule_path)->required();

  auto* oracle = app.add_subcommand("oracle", "Exact brute-force optimum over admission orders");
  oracle->add_option("--instance", instance_path)->required();
  oracle->add_option("--max-orders", max_orders);
  oracle->add_option("--emit", emit_path);

  auto* reduce = app.add_subcommand("reduce", "Build a multi-cross instance from a PARTITION input");
  reduce->add_option("--set", set_text)->required();
  reduce->add_option("--out", out_path);

  auto* extract = app.add_subcommand("extract", "Read a partition off a reduction schedule");
  extract->add_option("--instance", instance_path)->required();
  extract->add_option("--schedule", schedule_path)->required();

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--kind", kind)->required();
  gen->add_option("--k", k);
  gen->add_option("--n", n)->required();
  gen->add_option("--seed", seed)->required();
  gen->add_option("--max-release", max_release)->required();
  gen->add_option("--max-length", max_length)->required();
  gen->add_option("--out", out_path)->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return failure;
  }

  try {
    Json report;
    if (*decide) {
      const Instance inst = load_instance(read_file(instance_path));
      const AnyDecider decider = select_decider(inst.topology(), parse_algorithm(algorithm));
      const Outcome outcome = decide_at(inst, decider, Time(delay));
      report["command"] = "decide";
      report["result"] = outcome.is_feasible() ? "feasible" : "infeasible";
      report["algorithm"] = detail::decider_name(decider);
      report["delay"] = delay;
      if (outcome.is_feasible()) {
        report["max_delay"] = max_delay(inst, outcome.schedule()).value();
        report["schedule"] = schedule_to_json(outcome.schedule());
      }
      detail::emit(out, report);
      return outcome.is_feasible() ? ok : negative;
    }
    if (*solve) {
      const Instance inst = load_instance(read_file(instance_path));
      const AnyDecider decider = select_decider(inst.topology());
      const SearchResult result = minimize_delay(inst, decider, parse_strategy(strategy));
      if (!emit_path.empty()) write_file(emit_path, save_schedule(result.schedule));
      report["command"] = "solve";
      report["result"] = "optimal";
      report["algorithm"] = detail::decider_name(decider);
      report["strategy"] = strategy;
      report["d_star"] = result.dstar.value();
      report["decision_calls"] = result.stats.decision_calls;
      report["schedule"] = schedule_to_json(result.schedule);
      detail::emit(out, report);
      return ok;
    }
    if (*validate) {
      const Instance inst = load_instance(read_file(instance_path));
      const Schedule sched = load_schedule(read_file(schedule_path));
      const ValidationReport vr = check_valid(inst, sched);
      report["command"] = "validate";
      report["result"] = vr.valid() ? "valid" : "invalid";
      if (vr.max_delay) report["max_delay"] = vr.max_delay->value();
      report["violations"] = detail::violations_json(vr);
      detail::emit(out, report);
      return vr.valid() ? ok : negative;
    }
    if (*oracle) {
      const Instance inst = load_instance(read_file(instance_path));
      const OracleResult result = brute_force_optimal(inst, max_orders);
      if (!emit_path.empty()) write_file(emit_path, save_schedule(result.schedule));
      report["command"] = "oracle";
      report["result"] = "optimal";
      report["d_star"] = result.dstar.value();
      report["orders_evaluated"] = result.orders_evaluated;
      report["order"] = result.order;
      report["schedule"] = schedule_to_json(result.schedule);
      detail::emit(out, report);
      return ok;
    }
    if (*reduce) {
      const auto x = detail::parse_set(set_text);
      const auto red = reduce_partition(x);
      report["command"] = "reduce";
      if (!red) {
        report["result"] = "trivially no partition";
        report["x"] = x;
        detail::emit(out, report);
        return negative;
      }
      report["result"] = "instance";
      report["meta"] = meta_to_json(red->meta);
      if (!out_path.empty()) {
        write_file(out_path, save_instance(red->instance));
        report["out"] = out_path;
      } else {
        report["instance"] = instance_to_json(red->instance);
      }
      detail::emit(out, report);
      return ok;
    }
    if (*extract) {
      const Instance inst = load_instance(read_file(instance_path));
      const Schedule sched = load_schedule(read_file(schedule_path));
      if (!inst.meta()) throw InvalidArgument("instance carries no reduction metadata");
      const auto part = extract_partition(*inst.meta(), inst, sched);
      report["command"] = "extract";
      if (!part) {
        report["result"] = "none";
        detail::emit(out, report);
        return negative;
      }
      report["result"] = "partition";
      report["u"] = part->u;
      report["v"] = part->v;
      detail::emit(out, report);
      return ok;
    }
    if (*gen) {
      const Topology topo = make_topology(parse_topology_kind(kind), k);
      const Instance inst = generate_instance(topo, n, seed, Time(max_release), Time(max_length));
      write_file(out_path, save_instance(inst));
      report["command"] = "gen";
      report["result"] = "written";
      report["n"] = inst.size();
      report["out"] = out_path;
      detail::emit(out, report);
      return ok;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
  return failure;
}

} // namespace platoon::cli
