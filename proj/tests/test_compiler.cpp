#include <gtest/gtest.h>

#include <algorithm>

#include "rosterlearn/compiler.hpp"

using namespace rosterlearn;

namespace {

const MonthId kJan(2024, 1);  // 31 days, five Mondays

MinedConstraint mined(const std::string& tid, const std::string& line) { return parse_mined(tid, line); }

CompileContext context(std::vector<StaffId> staff) {
    CompileContext ctx;
    ctx.month = kJan;
    ctx.staff = std::move(staff);
    ctx.requests = RequestSet(kJan, {});
    return ctx;
}

std::vector<std::string> lines(const std::vector<ConstraintInstance>& v, const std::string& tid = {}) {
    std::vector<std::string> out;
    for (const auto& c : v) {
        if (tid.empty() || c.provenance.template_id == tid) out.push_back(format_instance(c));
    }
    return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST(Compile, MonthlyCountGetsSoftExactAndHardSlack) {
    auto out = compile({mined("T3", "(10006, D, 1, 31, 15, 15)")}, context({"10006"}));
    EXPECT_EQ(lines(out.soft, "T3"), std::vector<std::string>{"soft:1|mined:T3|count(10006, D, 15, 15)"});
    EXPECT_EQ(lines(out.hard, "T3"), std::vector<std::string>{"hard|mined:T3|count(10006, D, 14, 16)"});
}

TEST(Compile, NeverWorkedShiftStaysForbidden) {
    auto out = compile({mined("T3", "(10006, 1N, 1, 31, 0, 0)")}, context({"10006"}));
    EXPECT_EQ(lines(out.hard, "T3"), std::vector<std::string>{"hard|mined:T3|count(10006, 1N, 0, 0)"});
}

TEST(Compile, LowerSlackClampsAtZero) {
    auto out = compile({mined("T3", "(10006, 2N, 1, 31, 0, 2)")}, context({"10006"}));
    EXPECT_EQ(lines(out.hard, "T3"), std::vector<std::string>{"hard|mined:T3|count(10006, 2N, 0, 3)"});
}

TEST(Compile, WeekdayDemandExpandsToEveryMatchingDay) {
    auto out = compile({mined("T4", "(\"Mon.\", D, 9)")}, context({"10001"}));
    auto soft = lines(out.soft, "T4");
    auto hard = lines(out.hard, "T4");
    ASSERT_EQ(soft.size(), 5u);
    ASSERT_EQ(hard.size(), 5u);
    for (int d : {1, 8, 15, 22, 29}) {
        EXPECT_TRUE(contains(soft, "soft:1|mined:T4|demand(" + std::to_string(d) + ", D, 9, 9)"));
        EXPECT_TRUE(contains(hard, "hard|mined:T4|demand(" + std::to_string(d) + ", D, 8, 10)"));
    }
}

TEST(Compile, WeekdayDemandRespectsPolicySlack) {
    CompilePolicy policy;
    policy.demand_slack_lower = 0;
    policy.demand_slack_upper = 2;
    auto out = compile({mined("T4", "(\"Sun.\", D, 6)")}, context({"10001"}), policy);
    EXPECT_TRUE(contains(lines(out.hard, "T4"), "hard|mined:T4|demand(7, D, 6, 8)"));
}

TEST(Compile, HorizonLimitsExpandedDays) {
    auto ctx = context({"10001"});
    ctx.horizon = 7;
    auto out = compile({mined("T4", "(\"Mon.\", D, 9)")}, ctx);
    EXPECT_EQ(lines(out.hard, "T4").size(), 1u);
    std::size_t ones = 0;
    for (const auto& c : out.hard) ones += std::holds_alternative<AssignExactlyOne>(c.body) ? 1 : 0;
    EXPECT_EQ(ones, 7u);
}

TEST(Compile, SpecificPatternsJoinTheStaffAllowedSet) {
    auto out = compile({mined("T1", "(10005, -, D)"), mined("T1", "(10005, D, D)"), mined("T1", "(10005, D, D, -)")},
                       context({"10005"}));
    auto soft = lines(out.soft, "T1");
    EXPECT_EQ(soft, (std::vector<std::string>{"soft:1|mined:T1/2|pattern(10005, 2, [- D; D D])",
                                              "soft:1|mined:T1/3|pattern(10005, 3, [D D -])"}));
    EXPECT_TRUE(lines(out.hard, "T1").empty());
}

TEST(Compile, GeneralPatternsAreHardForEveryone) {
    auto out = compile({mined("T2", "(D, -)"), mined("T2", "(-, D)")}, context({"10001", "10002"}));
    EXPECT_EQ(lines(out.hard, "T2"), std::vector<std::string>{"hard|mined:T2/2|pattern(*, 2, [- D; D -])"});
}

TEST(Compile, DefaultsCoverCellsPinsAndDemand) {
    auto ctx = context({"10001", "10002", "10003"});
    ctx.requests = RequestSet(kJan, {{"10002", 4, ShiftSymbol::off()}});
    DemandTable t;
    for (Weekday w : kAllWeekdays) t.set(w, "D", 2);
    ctx.demand = t;
    auto out = compile({}, ctx);
    auto hard = lines(out.hard);
    EXPECT_EQ(std::count_if(hard.begin(), hard.end(), [](const auto& l) { return l.find("|one(") != std::string::npos; }), 93);
    EXPECT_TRUE(contains(hard, "hard|default:pin|pin(10002, 4, -)"));
    EXPECT_TRUE(contains(hard, "hard|default:demand|demand(31, D, 2, 3)"));
}

TEST(Compile, AbsentStaffGoInactive) {
    auto out = compile({mined("T3", "(19999, D, 1, 31, 3, 4)")}, context({"10001"}));
    EXPECT_TRUE(lines(out.soft, "T3").empty());
    EXPECT_EQ(out.inactive.size(), 2u);
    EXPECT_NE(dump_compiled(out).find("inactive soft:1|mined:T3|count(19999, D, 3, 4)"), std::string::npos);
}

TEST(Compile, ManualLinesCompileWithTheirHardness) {
    auto ctx = context({"10005", "10006"});
    ctx.manual = parse_manual_file("hard|T3|(10006, *, 1, 31, 20, 22)\nsoft:3|T1|(10005, -, D)\nsoft:3|T1|(10005, D, D)\n");
    auto out = compile({}, ctx);
    EXPECT_TRUE(contains(lines(out.hard), "hard|manual:T3|count(10006, *, 20, 22)"));
    EXPECT_TRUE(contains(lines(out.soft), "soft:3|manual:T1/2|pattern(10005, 2, [- D; D D])"));
}

TEST(Compile, RequestsForAnotherMonthRejected) {
    auto ctx = context({"10001"});
    ctx.requests = RequestSet(MonthId(2024, 2), {{"10001", 3, ShiftSymbol::off()}});
    EXPECT_THROW(compile({}, ctx), DataError);
}

namespace {

// 10006 is a day-only part-timer with 15 days; 10007 works nights too.
CompiledSet facility() {
    std::vector<MinedConstraint> m = {
        mined("T3", "(10006, D, 1, 31, 15, 15)"), mined("T3", "(10006, 1N, 1, 31, 0, 0)"),
        mined("T1", "(10006, D, -)"),            mined("T3", "(10007, D, 1, 31, 10, 12)"),
        mined("T3", "(10007, 1N, 1, 31, 6, 8)"), mined("T1", "(10007, 1N, 1N)")};
    return compile(m, context({"10006", "10007"}));
}

std::vector<std::string> about(const CompiledSet& s, const StaffId& who) {
    std::vector<std::string> out;
    for (const auto* group : {&s.hard, &s.soft}) {
        for (const auto& c : *group) {
            if (staff_of(c.body) == who && !std::holds_alternative<AssignExactlyOne>(c.body)) {
                auto line = format_body(c.body);
                out.push_back((c.hard ? "hard " : "soft ") + line);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> renamed(std::vector<std::string> v, const std::string& from, const std::string& to) {
    for (auto& s : v) {
        for (auto p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
    }
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST(Mirror, PartTimerClonesTheMatchingDonor) {
    auto base = facility();
    auto attrs = staff_attributes(base, ShiftAlphabet::standard());
    EXPECT_EQ(attrs.at("10006").feasible_shifts, std::set<std::string>{"D"});
    EXPECT_EQ(attrs.at("10006").working_days, Rational(15));

    auto out = mirror_for_new_staff(base, "20001", {{"D"}, Rational(15)}, ShiftAlphabet::standard());
    auto cloned = about(out, "20001");
    EXPECT_EQ(cloned, renamed(about(base, "10006"), "10006", "20001"));
    EXPECT_TRUE(contains(cloned, "soft pattern(20001, 2, [D -])"));
    EXPECT_TRUE(contains(cloned, "hard count(20001, D, 14, 16)"));
    for (const auto& c : out.soft) {
        if (staff_of(c.body) == StaffId("20001")) {
            EXPECT_EQ(c.provenance.origin, Origin::Mirrored);
        }
    }
}

TEST(Mirror, IdenticalStaffGivesDonorSetModuloId) {
    auto base = facility();
    auto attrs = staff_attributes(base, ShiftAlphabet::standard());
    auto out = mirror_for_new_staff(base, "20002", attrs.at("10007"), ShiftAlphabet::standard());
    EXPECT_EQ(about(out, "20002"), renamed(about(base, "10007"), "10007", "20002"));
}

TEST(Mirror, EquidistantDonorsPickSmallerId) {
    auto base = compile({mined("T3", "(10012, D, 1, 31, 16, 16)"), mined("T3", "(10011, D, 1, 31, 14, 14)")},
                        context({"10011", "10012"}));
    auto out = mirror_for_new_staff(base, "20003", {{"D"}, Rational(15)}, ShiftAlphabet::standard());
    EXPECT_TRUE(contains(about(out, "20003"), "soft count(20003, D, 14, 14)"));
}

TEST(Mirror, NoCompatibleDonorIsConfigError) {
    EXPECT_THROW(mirror_for_new_staff(facility(), "20004", {{"2N"}, Rational(10)}, ShiftAlphabet::standard()), ConfigError);
}
