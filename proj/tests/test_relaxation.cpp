#include <gtest/gtest.h>

#include "rosterlearn/relaxation.hpp"
#include "support.hpp"

using namespace rosterlearn;
using Kind = RelaxationStep::Kind;

namespace {

// Demotions strictly decreasing, and no drop before the last demotion.
void expect_ladder_order(const RelaxationTrace& t) {
    auto lengths = t.relaxed_lengths();
    for (std::size_t i = 1; i < lengths.size(); ++i) EXPECT_GT(lengths[i - 1], lengths[i]);
    bool dropped = false;
    for (const auto& s : t.steps) {
        if (s.kind == Kind::DropRequest) dropped = true;
        if (s.kind == Kind::DemoteT2) {
            EXPECT_FALSE(dropped) << "demotion after a request drop";
        }
    }
}

ScheduleProblem without_t2_longer_than(ScheduleProblem p, int n) {
    for (auto& c : p.constraints.hard) {
        if (c.provenance.template_id == "T2" && std::get<AllowedPatternSet>(c.body).length > n) {
            c.hard = false;
            p.constraints.soft.push_back(c);
        }
    }
    std::erase_if(p.constraints.hard, [](const ConstraintInstance& c) { return !c.hard; });
    return p;
}

}  // namespace

TEST(Relaxation, FeasibleInstanceLeavesEmptyTrace) {
    auto r = solve_with_relaxation(rosterlearn::testing::ladder_feasible());
    EXPECT_TRUE(r.schedule.ok());
    EXPECT_TRUE(r.trace.steps.empty());
    EXPECT_EQ(r.trace.attempts, 1);
    EXPECT_EQ(r.trace.header(), "relaxed_T2_lengths=[]; dropped_requests=[]");
}

TEST(Relaxation, SevenDayBlockIsDemotedOnce) {
    auto p = rosterlearn::testing::ladder_seven_day_block();
    EXPECT_EQ(brute_force_oracle(p).status, SolveStatus::Infeasible);
    EXPECT_TRUE(brute_force_oracle(without_t2_longer_than(p, 6)).ok());

    auto r = solve_with_relaxation(p);
    ASSERT_TRUE(r.schedule.ok());
    EXPECT_EQ(r.trace.relaxed_lengths(), std::vector<int>{7});
    EXPECT_TRUE(r.trace.dropped_requests().empty());
    EXPECT_EQ(r.trace.header(), "relaxed_T2_lengths=[7]; dropped_requests=[]");
    EXPECT_EQ(render_roster(*r.schedule.roster), "staff,1,2,3,4,5,6,7\n10001,D,D,D,D,D,D,-\n");
    // the demoted set is now soft and its one violated window is charged
    EXPECT_EQ(r.schedule.objective, 1);
    expect_ladder_order(r.trace);
}

TEST(Relaxation, PinConflictDropsExactlyOneRequest) {
    auto p = rosterlearn::testing::ladder_pin_conflict();
    auto r = solve_with_relaxation(p);
    ASSERT_TRUE(r.schedule.ok());
    EXPECT_EQ(r.trace.relaxed_lengths(), (std::vector<int>{3, 2}));
    EXPECT_EQ(r.trace.dropped_requests(), (std::vector<std::pair<StaffId, int>>{{"10001", 2}}));
    EXPECT_EQ(r.trace.steps.back().kind, Kind::DropRequest);
    EXPECT_EQ(r.dropped.size(), 1u);
    EXPECT_EQ(r.trace.header(), "relaxed_T2_lengths=[3,2]; dropped_requests=[(10001,2)]");
    expect_ladder_order(r.trace);

    // The surviving pin is honoured.
    const auto& roster = *r.schedule.roster;
    EXPECT_EQ(roster.at(*roster.index_of("10002"), 1).code(), "-");
    EXPECT_EQ(check_violations(roster, r.final_constraints).hard_violations, 0);
}

TEST(Relaxation, LowestMarginPinGoesFirst) {
    auto p = rosterlearn::testing::ladder_pin_conflict();
    auto margins = detail::pin_margins(p);
    EXPECT_EQ(margins.at(2), Rational(1, 2));
    EXPECT_GT(margins.at(1), margins.at(2));
}

TEST(Relaxation, UnresolvableConflictReportsFailure) {
    auto p = rosterlearn::testing::ladder_base(1, 2);
    p.constraints.hard.push_back(rosterlearn::testing::instance("d", true, DemandRange{1, "D", 2, 2}, {"demand", 1, Origin::Default}));
    auto r = solve_with_relaxation(p);
    EXPECT_FALSE(r.schedule.ok());
    EXPECT_EQ(r.trace.final_status, SolveStatus::Infeasible);
    EXPECT_TRUE(r.trace.steps.empty());
}

TEST(Relaxation, InnocentDroppedPinIsRestored) {
    // 10002's leave sits on the tighter day so it is dropped first, but the
    // real conflict is 10001's leave against a two-day work count.
    auto p = rosterlearn::testing::ladder_base(2, 2);
    using rosterlearn::testing::instance;
    p.constraints.hard.push_back(instance("d", true, DemandRange{1, "D", 1, 2}, {"demand", 1, Origin::Default}));
    p.constraints.hard.push_back(instance("c", true, CountRange{"10001", "D", 2, 2}, {"T3", 0, Origin::Mined}));
    p.constraints.hard.push_back(instance("x", true, RequestPin{"10002", 1, "-"}, {"pin", 1, Origin::Default}));
    p.constraints.hard.push_back(instance("y", true, RequestPin{"10001", 2, "-"}, {"pin", 1, Origin::Default}));
    auto r = solve_with_relaxation(p);
    ASSERT_TRUE(r.schedule.ok());
    ASSERT_EQ(r.trace.steps.size(), 3u);
    EXPECT_EQ(r.trace.steps[0].kind, Kind::DropRequest);
    EXPECT_EQ(r.trace.steps[0].staff, "10002");
    EXPECT_EQ(r.trace.steps[2].kind, Kind::RestoreRequest);
    EXPECT_EQ(r.trace.dropped_requests(), (std::vector<std::pair<StaffId, int>>{{"10001", 2}}));
    const auto& roster = *r.schedule.roster;
    EXPECT_EQ(roster.at(*roster.index_of("10002"), 1).code(), "-");
}
