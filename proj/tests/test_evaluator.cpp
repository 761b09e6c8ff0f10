#include <gtest/gtest.h>

#include "rosterlearn/evaluator.hpp"

using namespace rosterlearn;

namespace {

const MonthId kJan(2024, 1);

Roster rows(std::vector<std::string> lines) {
    std::vector<StaffId> staff;
    std::vector<std::vector<ShiftSymbol>> grid;
    int width = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        staff.push_back(std::to_string(10001 + i));
        std::vector<ShiftSymbol> r;
        for (const auto& code : text::split(lines[i])) r.push_back(ShiftSymbol::abstract(code));
        width = static_cast<int>(r.size());
        grid.push_back(std::move(r));
    }
    return Roster(kJan, staff, grid, width);
}

EvaluationConfig empty_config() {
    EvaluationConfig cfg;
    cfg.working_days.emplace();
    cfg.feasible_shifts.emplace();
    cfg.shift_hours = std::map<std::string, int>{{"D", 8}, {"1N", 8}, {"2N", 8}};
    cfg.hour_limits.emplace();
    cfg.demand.emplace();
    cfg.requests = RequestSet(kJan, {});
    return cfg;
}

}  // namespace

TEST(Evaluate, AllOffIsClean) {
    auto rep = evaluate(Roster::constant(kJan, {"10001", "10002"}, ShiftSymbol::off()), empty_config());
    for (auto cls : kViolationClasses) EXPECT_EQ(rep[cls], 0) << cls;
}

TEST(Evaluate, NightPairThenOffIsFine) {
    auto rep = evaluate(rows({"1N,1N,-,D"}), empty_config());
    EXPECT_EQ(rep["H5"], 0);
    EXPECT_EQ(rep["S1"], 0);
    EXPECT_EQ(rep["S2"], 0);
}

TEST(Evaluate, NightOffNightIsS3) {
    auto rep = evaluate(rows({"1N,-,1N,1N"}), empty_config());
    EXPECT_EQ(rep["S3"], 1);
}

TEST(Evaluate, LoneInteriorNightIsH5) {
    auto rep = evaluate(rows({"D,1N,-,-,D"}), empty_config());
    EXPECT_EQ(rep["H5"], 1);
    // runs cut by the horizon edge are not judged
    EXPECT_EQ(evaluate(rows({"1N,-,-,2N"}), empty_config())["H5"], 0);
}

TEST(Evaluate, WorkRightAfterNightsIsS1AndMaybeS2) {
    auto fallback = evaluate(rows({"1N,1N,D,-"}), empty_config());
    EXPECT_EQ(fallback["S1"], 1);
    EXPECT_EQ(fallback["S2"], 0);
    auto hard = evaluate(rows({"1N,1N,D,D"}), empty_config());
    EXPECT_EQ(hard["S1"], 1);
    EXPECT_EQ(hard["S2"], 1);
}

TEST(Evaluate, LongDayRunsCountExcessDays) {
    auto cfg = empty_config();
    EXPECT_EQ(evaluate(rows({"D,D,D,D,D,D,-,D"}), cfg)["S5"], 2);
    cfg.consecutive_day_limit = 6;
    EXPECT_EQ(evaluate(rows({"D,D,D,D,D,D,-,D"}), cfg)["S5"], 0);
}

TEST(Evaluate, NightSpreadOverNightCapableStaff) {
    auto cfg = empty_config();
    (*cfg.feasible_shifts)["10003"] = {"D"};
    (*cfg.feasible_shifts)["10002"] = {"D", "1N"};
    auto rep = evaluate(rows({"1N,1N,-,-", "D,-,-,-", "D,D,-,-"}), cfg);
    EXPECT_EQ(rep["S4"], 2);
    EXPECT_EQ(rep["H2"], 0);
}

TEST(Evaluate, HardClassesFromConfig) {
    auto cfg = empty_config();
    (*cfg.working_days)["10001"] = {3, 4};
    (*cfg.feasible_shifts)["10001"] = {"D"};
    (*cfg.hour_limits)["10001"] = 8;
    cfg.demand->set(kJan.weekday(2), "D", 1);
    auto rep = evaluate(rows({"1N,1N,-,-"}), cfg);
    EXPECT_EQ(rep["H1"], 1);
    EXPECT_EQ(rep["H2"], 2);
    EXPECT_EQ(rep["H3"], 1);
    EXPECT_EQ(rep["H4"], 1);
    EXPECT_EQ(rep.hard_total(), 5);
    EXPECT_EQ(rep.per_staff.at("10001").at("H2"), 2);
}

TEST(Evaluate, UnmetRequestsAreS6) {
    auto cfg = empty_config();
    cfg.requests = RequestSet(kJan, {{"10001", 1, ShiftSymbol::off()}, {"10001", 2, ShiftSymbol::off()},
                                     {"10001", 20, ShiftSymbol::off()}, {"99999", 1, ShiftSymbol::off()}});
    EXPECT_EQ(evaluate(rows({"D,-,-,-"}), cfg)["S6"], 1);
}

TEST(Evaluate, MissingSectionIsConfigError) {
    auto cfg = empty_config();
    cfg.demand.reset();
    EXPECT_THROW(evaluate(rows({"D"}), cfg), ConfigError);
    cfg = empty_config();
    cfg.requests.reset();
    EXPECT_THROW(evaluate(rows({"D"}), cfg), ConfigError);
    cfg = empty_config();
    cfg.consecutive_day_limit = 0;
    EXPECT_THROW(evaluate(rows({"D"}), cfg), ConfigError);
}

TEST(Compare, IdenticalReportsHaveZeroDeltas) {
    auto rep = evaluate(rows({"1N,-,1N,1N"}), empty_config());
    for (const auto& row : compare_runs(rep, rep)) EXPECT_EQ(row.delta, 0) << row.cls;
}

TEST(Compare, FewerLongRunsFlagged) {
    auto cfg = empty_config();
    auto a = evaluate(rows({"D,D,D,D,D,-,-,-,-,-"}), cfg, "with");
    auto b = evaluate(rows({"D,D,D,D,D,D,D,D,-,-"}), cfg, "without");
    ASSERT_EQ(a["S5"], 1);
    ASSERT_EQ(b["S5"], 4);
    auto table = compare_runs(a, b);
    auto s5 = std::find_if(table.begin(), table.end(), [](const auto& r) { return r.cls == "S5"; });
    EXPECT_EQ(s5->delta, -3);
    EXPECT_TRUE(s5->a_lower);
    EXPECT_NE(render_comparison(table).find("S5,1,4,-3,yes"), std::string::npos);
}

TEST(Compare, HardDifferenceBetweenFeasibleSchedulesIsALogicError) {
    auto cfg = empty_config();
    (*cfg.working_days)["10001"] = {1, 1};
    auto a = evaluate(rows({"D,-"}), cfg);
    auto b = evaluate(rows({"D,D"}), cfg);
    EXPECT_THROW(compare_runs(a, b), std::logic_error);
    b.feasible = false;
    EXPECT_NO_THROW(compare_runs(a, b));
    auto other = evaluate(Roster::constant(MonthId(2024, 2), {"10001"}, ShiftSymbol::off()), cfg);
    EXPECT_THROW(compare_runs(a, other), DataError);
}

TEST(EvaluationConfigFile, RoundTrip) {
    const std::string text =
        "working_days,10001,18,22\nfeasible,10001,1N D\nhours,D,8\nhour_limit,10001,176\ns5_limit,5\n";
    auto cfg = parse_evaluation_config(text);
    EXPECT_EQ(cfg.consecutive_day_limit, 5);
    EXPECT_EQ(cfg.feasible_shifts->at("10001"), (std::set<std::string>{"1N", "D"}));
    EXPECT_EQ(render_evaluation_config(cfg), text);
    EXPECT_THROW(parse_evaluation_config("hours,D,x\n"), ParseError);
    EXPECT_THROW(parse_evaluation_config("colour,blue\n"), ParseError);
}

TEST(Report, CsvListsEveryClass) {
    auto rep = evaluate(rows({"1N,-,1N,1N"}), empty_config(), "x", true, "relaxed_T2_lengths=[]; dropped_requests=[]");
    auto csv = render_report_csv(rep);
    EXPECT_EQ(csv.rfind("# relaxed_T2_lengths=[]", 0), 0u);
    EXPECT_NE(csv.find("S3,1\n"), std::string::npos);
    EXPECT_NE(render_report_table(rep).find("S4 spread 0"), std::string::npos);
}
