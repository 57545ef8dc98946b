#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "platoon/cli.hpp"
#include "support.hpp"

using namespace platoon;
using namespace platoon::testing;

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("platoon_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string put(const std::string& name, const std::string& content) const {
    write_file(path(name), content);
    return path(name);
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(std::move(args), out_, err_);
  }

  Json report() const { return Json::parse(out_.str()); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

} // namespace

TEST_F(Cli, DecideMergePair) {
  const auto f = put("merge_pair.json", save_instance(merge_pair()));
  EXPECT_EQ(run({"decide", "--instance", f, "--delay", "2"}), 0);
  const Json r = report();
  EXPECT_EQ(r["command"], "decide");
  EXPECT_EQ(r["result"], "feasible");
  EXPECT_EQ(schedule_from_json(r["schedule"]), S({{"A", 0}, {"B", 3}}));

  EXPECT_EQ(run({"decide", "--instance", f, "--delay", "1"}), 1);
  EXPECT_EQ(report()["result"], "infeasible");
  EXPECT_EQ(run({"decide", "--instance", f, "--delay", "2", "--algorithm", "dp"}), 0);
  EXPECT_EQ(report()["algorithm"], "merge-dp");
}

TEST_F(Cli, DecideRejectsMultiCrossAndBadFlags) {
  const auto red = reduce_partition(std::vector<std::int64_t>{1, 1});
  const auto f = put("mc.json", save_instance(red->instance));
  EXPECT_EQ(run({"decide", "--instance", f, "--delay", "3"}), 2);
  EXPECT_NE(err_.str().find("oracle"), std::string::npos);
  EXPECT_EQ(run({"decide", "--instance", f}), 2);
  EXPECT_EQ(run({"decide", "--instance", f, "--delay", "1", "--bogus"}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"decide", "--instance", path("missing.json"), "--delay", "1"}), 2);
}

TEST_F(Cli, SolveAndEmit) {
  const auto f = put("ls.json", save_instance(long_short()));
  const auto emit = path("sched.json");
  EXPECT_EQ(run({"solve", "--instance", f, "--emit", emit}), 0);
  const Json r = report();
  EXPECT_EQ(r["d_star"], 3);
  EXPECT_EQ(r["strategy"], "hybrid");
  EXPECT_EQ(load_schedule(read_file(emit)), S({{"Q", 2}, {"P", 3}}));
  EXPECT_EQ(schedule_from_json(r["schedule"]), load_schedule(read_file(emit)));

  for (const char* s : {"bisect", "comparison"}) {
    EXPECT_EQ(run({"solve", "--instance", f, "--strategy", s}), 0);
    EXPECT_EQ(report()["d_star"], 3);
  }
  EXPECT_EQ(run({"solve", "--instance", f, "--strategy", "magic"}), 2);
}

TEST_F(Cli, ValidateReportsViolations) {
  const auto f = put("merge_pair.json", save_instance(merge_pair()));
  const auto good = put("good.json", save_schedule(S({{"A", 0}, {"B", 3}})));
  const auto bad = put("bad.json", save_schedule(S({{"A", 0}, {"B", 2}})));
  EXPECT_EQ(run({"validate", "--instance", f, "--schedule", good}), 0);
  EXPECT_EQ(report()["max_delay"], 2);
  EXPECT_EQ(run({"validate", "--instance", f, "--schedule", bad}), 1);
  const Json r = report();
  EXPECT_EQ(r["result"], "invalid");
  EXPECT_EQ(r["violations"][0]["kind"], "cross-collision");
}

TEST_F(Cli, OracleAndCap) {
  const auto f = put("three.json", save_instance(three_way()));
  const auto emit = path("o.json");
  EXPECT_EQ(run({"oracle", "--instance", f, "--emit", emit}), 0);
  EXPECT_EQ(report()["d_star"], 7);
  EXPECT_EQ(load_schedule(read_file(emit)), S({{"B", 3}, {"C", 5}, {"A", 7}}));
  EXPECT_EQ(run({"oracle", "--instance", f, "--max-orders", "5"}), 2);
  EXPECT_NE(err_.str().find("6"), std::string::npos);
}

TEST_F(Cli, ReduceAndExtract) {
  EXPECT_EQ(run({"reduce", "--set", "1,1,1"}), 1);
  EXPECT_EQ(report()["result"], "trivially no partition");

  const auto inst = path("red.json");
  EXPECT_EQ(run({"reduce", "--set", "1,1,2", "--out", inst}), 0);
  EXPECT_EQ(report()["meta"]["d_max"], 5);
  const Instance loaded = load_instance(read_file(inst));
  ASSERT_TRUE(loaded.meta());
  const Json file = Json::parse(read_file(inst));
  EXPECT_EQ(file["meta"]["reduction"], "partition");
  EXPECT_EQ(file["meta"]["q"], 2);

  const auto sched = put("s.json", save_schedule(S({{"p4", 2}, {"p5", 3}, {"p2", 4}, {"p1", 5}, {"p6", 5}, {"p3", 7}})));
  EXPECT_EQ(run({"extract", "--instance", inst, "--schedule", sched}), 0);
  EXPECT_EQ(report()["u"], Json::array({1, 1}));
  EXPECT_EQ(report()["v"], Json::array({2}));

  const auto emit = path("late.json");
  put("late.json", save_schedule(serialized_schedule(loaded)));
  EXPECT_EQ(run({"extract", "--instance", inst, "--schedule", emit}), 1);
  EXPECT_EQ(report()["result"], "none");

  EXPECT_EQ(run({"reduce", "--set", "1,x"}), 2);
  EXPECT_EQ(run({"reduce", "--set", "0,2"}), 2);
}

TEST_F(Cli, GenIsDeterministic) {
  const auto a = path("a.json"), b = path("b.json");
  EXPECT_EQ(run({"gen", "--kind", "k-merge", "--k", "3", "--n", "8", "--seed", "5", "--max-release", "30",
                 "--max-length", "6", "--out", a}),
            0);
  EXPECT_EQ(run({"gen", "--kind", "k-merge", "--k", "3", "--n", "8", "--seed", "5", "--max-release", "30",
                 "--max-length", "6", "--out", b}),
            0);
  EXPECT_EQ(read_file(a), read_file(b));
  EXPECT_EQ(load_instance(read_file(a)).size(), 8u);
  EXPECT_EQ(run({"gen", "--kind", "k-merge", "--n", "8", "--seed", "5", "--max-release", "30", "--max-length",
                 "6", "--out", a}),
            2);
}

TEST_F(Cli, ReportIsDeterministic) {
  const auto f = put("c.json", save_instance(generate_instance(crossing(), 7, 3, Time(20), Time(4))));
  run({"solve", "--instance", f});
  const std::string first = out_.str();
  run({"solve", "--instance", f});
  EXPECT_EQ(first, out_.str());
}
