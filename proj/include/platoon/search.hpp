#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "platoon/decide.hpp"
#include "platoon/validate.hpp"

namespace platoon {

/// Feasibility at delay bound d.
template <class Decider>
Outcome decide_at(const Instance& inst, const Decider& decider, Time d) {
  AtMostProbe probe{d};
  return decider(inst, probe);
}

/// Feasibility for a delay strictly below d: every comparison "c <= d" is
/// replaced by "c < d".
template <class Decider>
Outcome decide_strictly_below(const Instance& inst, const Decider& decider, Time d) {
  StrictlyBelowProbe probe{d};
  return decider(inst, probe);
}

inline Outcome decide_at(const Instance& inst, const AnyDecider& decider, Time d) {
  return std::visit([&](const auto& dec) { return decide_at(inst, dec, d); }, decider);
}

inline Outcome decide_strictly_below(const Instance& inst, const AnyDecider& decider, Time d) {
  return std::visit([&](const auto& dec) { return decide_strictly_below(inst, dec, d); }, decider);
}

enum class Strategy { hybrid, bisect, comparison };

inline std::string_view to_string(Strategy s) noexcept {
  switch (s) {
  case Strategy::hybrid: return "hybrid";
  case Strategy::bisect: return "bisect";
  case Strategy::comparison: return "comparison";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view text) {
  for (auto s : {Strategy::hybrid, Strategy::bisect, Strategy::comparison})
    if (to_string(s) == text) return s;
  throw InvalidArgument("unknown strategy '" + std::string(text) + "'");
}

/// Open interval (lo, hi) known to contain the optimal delay.
struct SearchInterval {
  Time lo;
  Time hi;

  bool contains(Time c) const noexcept { return lo < c && c < hi; }
  /// Integer nearest the midpoint (the lower one on a half-way tie).
  Time midpoint() const { return Time((lo.value() + hi.value()) / 2); }
};

struct SearchStats {
  std::size_t decision_calls = 0;    // decide_at + decide_strictly_below runs
  std::size_t simulated_queries = 0; // comparisons issued by the simulated run
  bool halted = false;               // true if a test value hit the optimum exactly
};

struct SearchResult {
  Time dstar;
  Schedule schedule;
  SearchStats stats;
};

namespace detail {

/// Probe that answers comparisons against the unknown optimum by refining
/// an interval with concrete decision runs.
template <class Decider>
class ParametricProbe {
public:
  ParametricProbe(const Instance& inst, const Decider& decider, Strategy strategy, Time length)
      : inst_(inst), decider_(decider), strategy_(strategy),
        interval_{Time(-1), length + Time(1)} {}

  bool at_most(Time c) {
    ++stats_.simulated_queries;
    if (optimum_) return c <= *optimum_;
    if (interval_.contains(c)) refine(c);
    if (optimum_) return c <= *optimum_;
    if (c <= interval_.lo) return true;
    if (c >= interval_.hi) return false;
    throw ContractViolation("comparison value left inside the search interval");
  }

  const std::optional<Time>& optimum() const noexcept { return optimum_; }
  const std::optional<Schedule>& witness() const noexcept { return witness_; }
  SearchStats& stats() noexcept { return stats_; }
  const SearchInterval& interval() const noexcept { return interval_; }

private:
  void refine(Time c) {
    switch (strategy_) {
    case Strategy::hybrid:
      test(interval_.midpoint());
      if (!optimum_ && interval_.contains(c)) test(c);
      break;
    case Strategy::bisect:
      while (!optimum_ && interval_.contains(c))
        test(interval_.hi - interval_.lo == Time(2) ? interval_.lo + Time(1) : interval_.midpoint());
      break;
    case Strategy::comparison:
      test(c);
      break;
    }
  }

  void test(Time t) {
    Outcome at = decide_at(inst_, decider_, t);
    Outcome below = decide_strictly_below(inst_, decider_, t);
    stats_.decision_calls += 2;
    if (at.is_feasible() && !below.is_feasible()) {
      optimum_ = t;
      witness_ = at.schedule();
      stats_.halted = true;
      return;
    }
    if (below.is_feasible()) {
      if (!at.is_feasible())
        throw ContractViolation("decider is not monotone at " + std::to_string(t.value()));
      interval_.hi = t;
    } else {
      interval_.lo = t;
    }
    if (interval_.hi - interval_.lo < Time(2))
      throw ContractViolation("search interval became empty; decider violates monotonicity");
  }

  const Instance& inst_;
  const Decider& decider_;
  Strategy strategy_;
  SearchInterval interval_;
  std::optional<Time> optimum_;
  std::optional<Schedule> witness_;
  SearchStats stats_;
};

} // namespace detail

/// Minimum achievable maximum delay and a witness schedule, found by
/// simulating `decider` on the unknown optimum. Every comparison the
/// simulated run makes against a value still inside the bracketing interval
/// triggers concrete test runs at d and d-minus-epsilon; a test value where
/// the two disagree is the optimum.
template <class Decider>
SearchResult minimize_delay(const Instance& inst, const Decider& decider,
                            Strategy strategy = Strategy::hybrid) {
  detail::ParametricProbe<Decider> probe(inst, decider, strategy, schedule_length(inst));
  Outcome simulated = decider(inst, probe);
  SearchStats stats = probe.stats();

  if (probe.optimum()) return SearchResult{*probe.optimum(), *probe.witness(), stats};

  // No test value landed on the optimum; read it off the simulated run and
  // certify it.
  if (!simulated.is_feasible())
    throw ContractViolation("simulated run at the optimum reported infeasible");
  const Time dstar = max_delay(inst, simulated.schedule());
  stats.decision_calls += dstar > zero_time ? 2 : 1;
  if (!decide_at(inst, decider, dstar).is_feasible() ||
      (dstar > zero_time && decide_at(inst, decider, dstar - Time(1)).is_feasible()))
    throw ContractViolation("optimality certificate failed at " + std::to_string(dstar.value()));
  return SearchResult{dstar, simulated.schedule(), stats};
}

inline SearchResult minimize_delay(const Instance& inst, const AnyDecider& decider,
                                   Strategy strategy = Strategy::hybrid) {
  return std::visit([&](const auto& dec) { return minimize_delay(inst, dec, strategy); }, decider);
}

} // namespace platoon
