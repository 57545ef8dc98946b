#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "platoon/platoon.hpp"
#include "support.hpp"

using namespace platoon;
using namespace platoon::testing;

TEST(DecideAt, ConcreteBounds) {
  const Instance inst = long_short();
  EXPECT_TRUE(decide_at(inst, GreedyMergeDecider{}, Time(3)).is_feasible());
  EXPECT_FALSE(decide_at(inst, GreedyMergeDecider{}, Time(-1)).is_feasible());
  EXPECT_TRUE(decide_at(inst, GreedyMergeDecider{}, schedule_length(inst)).is_feasible());
}

TEST(DecideStrictlyBelow, FlipsTheComparison) {
  const Instance inst = long_short();
  EXPECT_FALSE(decide_strictly_below(inst, GreedyMergeDecider{}, Time(3)).is_feasible());
  EXPECT_TRUE(decide_strictly_below(inst, GreedyMergeDecider{}, Time(4)).is_feasible());
  EXPECT_TRUE(decide_strictly_below(inst, GreedyMergeDecider{}, schedule_length(inst) + Time(1)).is_feasible());
  EXPECT_TRUE(decide_strictly_below(make(ymerge(), {}), GreedyMergeDecider{}, Time(1)).is_feasible());
}

TEST(DecideAt, LengthIsAlwaysEnough) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng, crossing(), 7);
    const Time len = schedule_length(inst);
    // Oracle witness: serializing everyone after the last release.
    const Schedule witness = serialized_schedule(inst);
    ASSERT_TRUE(check_valid(inst, witness).valid());
    ASSERT_LE(max_delay(inst, witness), len);
    EXPECT_TRUE(decide_at(inst, CrossingDpDecider{}, len).is_feasible());
    EXPECT_TRUE(decide_strictly_below(inst, CrossingDpDecider{}, len + Time(1)).is_feasible());
    if (!inst.empty()) {
      EXPECT_FALSE(decide_at(inst, CrossingDpDecider{}, Time(-1)).is_feasible());
    }
  }
}

TEST(MinimizeDelay, Examples) {
  for (Strategy s : {Strategy::hybrid, Strategy::bisect, Strategy::comparison}) {
    SCOPED_TRACE(std::string(to_string(s)));
    const SearchResult a = minimize_delay(long_short(), GreedyMergeDecider{}, s);
    EXPECT_EQ(a.dstar, Time(3));
    EXPECT_EQ(a.schedule, S({{"Q", 2}, {"P", 3}}));

    const SearchResult b = minimize_delay(make(ymerge(), {P("p", "m1", 6, 2)}), GreedyMergeDecider{}, s);
    EXPECT_EQ(b.dstar, Time(0));
    EXPECT_EQ(b.schedule, S({{"p", 6}}));

    const SearchResult c = minimize_delay(three_way(), MergeDpDecider{}, s);
    EXPECT_EQ(c.dstar, Time(7));
    EXPECT_EQ(c.schedule, S({{"B", 3}, {"C", 5}, {"A", 7}}));

    const SearchResult e = minimize_delay(make(kmerge(2), {}), MergeDpDecider{}, s);
    EXPECT_EQ(e.dstar, Time(0));
    EXPECT_TRUE(e.schedule.crossing_times.empty());

    EXPECT_EQ(minimize_delay(merge_pair(), GreedyMergeDecider{}, s).dstar, Time(2));
  }
}

TEST(SearchInterval, Midpoint) {
  EXPECT_EQ((SearchInterval{Time(-1), Time(7)}.midpoint()), Time(3));
  EXPECT_EQ((SearchInterval{Time(2), Time(5)}.midpoint()), Time(3));
  EXPECT_TRUE((SearchInterval{Time(2), Time(5)}.contains(Time(4))));
  EXPECT_FALSE((SearchInterval{Time(2), Time(5)}.contains(Time(5))));
}

namespace {

/// Claims feasibility exactly at even bounds: not monotone.
struct BrokenDecider {
  template <DelayProbe P>
  Outcome operator()(const Instance& inst, P& probe) const {
    const bool even_ok = probe.at_most(Time(4)) && !probe.at_most(Time(3));
    const bool two_ok = probe.at_most(Time(2)) && !probe.at_most(Time(1));
    if (even_ok || two_ok) return Outcome::feasible(serialized_schedule(inst));
    return Outcome::infeasible();
  }
};

} // namespace

TEST(MinimizeDelay, DetectsNonMonotoneDecider) {
  const Instance inst = make(ymerge(), {P("a", "m1", 0, 5), P("b", "m2", 0, 5)});
  EXPECT_THROW(minimize_delay(inst, BrokenDecider{}, Strategy::bisect), ContractViolation);
}

TEST(MinimizeDelay, CertificateStrategiesAndBudgets) {
  struct Case {
    Topology topo;
    AnyDecider decider;
  };
  const std::vector<Case> cases{{ymerge(), GreedyMergeDecider{}}, {kmerge(3), MergeDpDecider{}},
                                {crossing(), CrossingDpDecider{}}};
  std::mt19937_64 rng(55);
  for (const Case& c : cases) {
    for (int trial = 0; trial < 40; ++trial) {
      const Instance inst = random_instance(rng, c.topo, 7);
      const Time len = schedule_length(inst);
      const auto budget = static_cast<std::size_t>(
          6 * (std::ceil(std::log2(static_cast<double>(len.value() + 2))) + 2));

      const SearchResult h = minimize_delay(inst, c.decider, Strategy::hybrid);
      const SearchResult b = minimize_delay(inst, c.decider, Strategy::bisect);
      const SearchResult k = minimize_delay(inst, c.decider, Strategy::comparison);
      EXPECT_EQ(h.dstar, b.dstar);
      EXPECT_EQ(h.dstar, k.dstar);
      EXPECT_EQ(h.schedule, b.schedule);
      EXPECT_EQ(h.schedule, k.schedule);
      EXPECT_LE(h.stats.decision_calls, budget);
      EXPECT_LE(b.stats.decision_calls, budget);

      // Comparison-only budget: two runs per query of one plain decider run, plus a certificate.
      AtMostProbe plain{h.dstar};
      std::size_t queries = 0;
      std::visit(
          [&](const auto& dec) {
            CountingProbe counter(plain);
            dec(inst, counter);
            queries = counter.count();
          },
          c.decider);
      EXPECT_LE(k.stats.decision_calls, 2 * queries + 2);

      EXPECT_GE(h.dstar, zero_time);
      EXPECT_LE(h.dstar, len);
      const auto report = check_valid(inst, h.schedule);
      ASSERT_TRUE(report.valid());
      EXPECT_EQ(*report.max_delay, h.dstar);
      EXPECT_TRUE(decide_at(inst, c.decider, h.dstar).is_feasible());
      if (h.dstar > zero_time) {
        EXPECT_FALSE(decide_at(inst, c.decider, h.dstar - Time(1)).is_feasible());
      }
    }
  }
}

TEST(MinimizeDelay, MatchesTickSearch) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance y = random_instance(rng, ymerge(), 4, 10, 4);
    EXPECT_EQ(minimize_delay(y, GreedyMergeDecider{}).dstar, tick_optimum(y)) << save_instance(y);
    const Instance k = random_instance(rng, kmerge(3), 4, 10, 4);
    EXPECT_EQ(minimize_delay(k, MergeDpDecider{}).dstar, tick_optimum(k)) << save_instance(k);
  }
}
