#include <gtest/gtest.h>

#include <algorithm>

#include "rosterlearn/pipeline.hpp"

using namespace rosterlearn;

namespace {

fs::path scratch(const std::string& name) {
    fs::path dir = fs::path(::testing::TempDir()) / ("rosterlearn_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

SyntheticSpec small_spec() {
    SyntheticSpec spec;
    spec.target_months = 2;
    return spec;
}

RunConfig config_for(const fs::path& dir) {
    RunConfig cfg;
    cfg.rosters_dir = (dir / "rosters").string();
    cfg.requests_dir = (dir / "requests").string();
    cfg.demand_file = (dir / "demand.csv").string();
    cfg.manual_constraints_file = (dir / "manual.txt").string();
    cfg.evaluation_file = (dir / "evaluation.csv").string();
    cfg.output_dir = (dir / "out").string();
    return cfg;
}

}  // namespace

TEST(Pipeline, GenWritesEverythingAndIsByteStable) {
    auto a = scratch("gen_a");
    auto b = scratch("gen_b");
    cmd_gen(small_spec(), a);
    cmd_gen(small_spec(), b);
    EXPECT_EQ(months_in(a / "rosters").size(), 36u);
    EXPECT_EQ(months_in(a / "requests").size(), 38u);
    for (const char* f : {"demand.csv", "manual.txt", "evaluation.csv", "manifest.txt", "rosterlearn.conf"}) {
        ASSERT_TRUE(fs::exists(a / f)) << f;
        EXPECT_EQ(read_text(a / f), read_text(b / f)) << f;
    }
    for (MonthId m : months_in(a / "rosters")) EXPECT_EQ(read_text(month_file(a / "rosters", m)), read_text(month_file(b / "rosters", m)));
}

TEST(Pipeline, HistoryRoundTripsThroughFiles) {
    auto dir = scratch("history");
    auto corpus = cmd_gen(small_spec(), dir);
    auto cfg = config_for(dir);
    auto h = load_history(cfg);
    ASSERT_EQ(h.rosters.size(), corpus.rosters.size());
    EXPECT_EQ(h.rosters.front(), corpus.rosters.front());
    EXPECT_EQ(h.requests.back().entries(), corpus.requests.back().entries());
    EXPECT_EQ(*load_demand(cfg), corpus.demand);
    EXPECT_EQ(pending_months(cfg).size(), 2u);
    EXPECT_EQ(latest_staff(cfg), corpus.rosters.back().staff());
}

TEST(Pipeline, ExtractSolveEvaluate) {
    auto dir = scratch("full");
    cmd_gen(small_spec(), dir);
    auto cfg = config_for(dir);

    auto ex = cmd_extract(cfg);
    ASSERT_TRUE(fs::exists(dir / "out" / "mined.txt"));
    auto back = parse_mined_file(read_text(dir / "out" / "mined.txt"));
    auto expect = ex.mined;
    std::sort(back.begin(), back.end());
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(back, expect);
    EXPECT_EQ(months_in(dir / "out" / "margins").size(), 36u);

    auto no_ex = cfg;
    no_ex.exclusion = false;
    auto wide = run_extract(load_history(no_ex), load_demand(no_ex), no_ex);
    std::set<std::tuple<std::string, int, AggregationKey>> ids_with, ids_without;
    for (const auto& c : ex.mined) if (c.is_pattern()) ids_with.insert(c.identity());
    for (const auto& c : wide.mined) if (c.is_pattern()) ids_without.insert(c.identity());
    EXPECT_TRUE(std::includes(ids_without.begin(), ids_without.end(), ids_with.begin(), ids_with.end()));
    EXPECT_LT(ids_with.size(), ids_without.size());

    auto target = pending_months(cfg).front();
    auto plans = cmd_solve(cfg, {target});
    ASSERT_EQ(plans.size(), 1u);
    const auto& s = plans[0].result.schedule;
    ASSERT_TRUE(s.ok()) << s.explanation;
    EXPECT_EQ(check_violations(*s.roster, plans[0].result.final_constraints).hard_violations, 0);

    const auto sched = month_file(dir / "out" / "schedules", target);
    auto file = parse_schedule_file(read_text(sched));
    EXPECT_EQ(file.month, target);
    EXPECT_EQ(*file.roster, *s.roster);

    auto ev = cmd_evaluate(cfg, sched, sched);
    EXPECT_EQ(ev.a.hard_total(), 0);
    EXPECT_TRUE(fs::exists(dir / "out" / "reports" / (target.to_string() + ".csv")));
    for (const auto& row : ev.comparison) EXPECT_EQ(row.delta, 0);

    // bare roster grid, month from the file name
    auto vs_ref = cmd_evaluate(cfg, sched, month_file(dir / "reference", target));
    ASSERT_TRUE(vs_ref.b.has_value());
    EXPECT_EQ(vs_ref.b->hard_total(), 0);
    EXPECT_EQ(vs_ref.comparison.size(), kViolationClasses.size());
    fs::copy_file(month_file(dir / "reference", target), dir / "unnamed.csv");
    EXPECT_THROW(evaluate_schedule_file(cfg, dir / "unnamed.csv"), DataError);
}

TEST(Pipeline, MissingInputsAreReported) {
    auto dir = scratch("missing");
    auto cfg = config_for(dir);
    EXPECT_THROW(load_history(cfg), DataError);
    EXPECT_THROW(cmd_solve(cfg, {MonthId(2024, 1)}), ConfigError);

    cmd_gen(small_spec(), dir);
    auto no_demand = cfg;
    no_demand.demand_file.clear();
    // bootstrap from history stands in for a missing demand file
    EXPECT_NO_THROW(run_extract(load_history(no_demand), std::nullopt, no_demand));
    EXPECT_THROW(bootstrap_demand({}), ConfigError);
    auto bad = cfg;
    bad.demand_file = (dir / "nope.csv").string();
    EXPECT_THROW(load_demand(bad), DataError);
}

TEST(Pipeline, ScheduleFileWithoutMonthRejected) {
    EXPECT_THROW(parse_schedule_file("staff,1\n10001,D\n"), DataError);
    auto f = parse_schedule_file("# month=2024-01\n# relaxed_T2_lengths=[]; dropped_requests=[]\n# status=timed_out objective=0\n");
    EXPECT_FALSE(f.roster.has_value());
    EXPECT_EQ(f.status, "timed_out");
}

TEST(Pipeline, MonthSeedsDiffer) {
    EXPECT_NE(month_seed(1, MonthId(2024, 1)), month_seed(1, MonthId(2024, 2)));
    EXPECT_EQ(month_seed(3, MonthId(2024, 1)), month_seed(3, MonthId(2024, 1)));
}
