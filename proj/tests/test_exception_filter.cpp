#include <gtest/gtest.h>

#include "rosterlearn/exception_filter.hpp"

using namespace rosterlearn;

namespace {

std::vector<StaffId> ids(int n) {
    std::vector<StaffId> out;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(10001 + i));
    return out;
}

DemandTable flat_demand(int day_shift, int night = 0) {
    DemandTable t;
    for (Weekday w : kAllWeekdays) {
        t.set(w, "D", day_shift);
        if (night) t.set(w, "1N", night);
    }
    return t;
}

// `working` days of D then Off for the rest of the month.
Roster one_row(MonthId m, const StaffId& id, int working) {
    std::vector<ShiftSymbol> row;
    for (int d = 1; d <= m.last_day(); ++d) row.push_back(d <= working ? ShiftSymbol::day() : ShiftSymbol::off());
    return Roster(m, {id}, {row});
}

RequestSet leaves(MonthId m, const StaffId& id, int count, int first_day) {
    std::vector<Request> q;
    for (int i = 0; i < count; ++i) q.push_back({id, first_day + i, ShiftSymbol::off()});
    return RequestSet(m, q);
}

const MonthId kJan(2024, 1);

}  // namespace

TEST(Margin, TenOverEightIsExactlyTheGate) {
    auto p = staffing_margin(kJan, {}, flat_demand(8), ids(10));
    EXPECT_EQ(p.day(1).margin, Rational(5, 4));
    EXPECT_TRUE(p.passes(1, 31, Rational(5, 4)));
}

TEST(Margin, NoRequestsGivesTwo) {
    auto p = staffing_margin(kJan, {}, flat_demand(8, 2), ids(20));
    for (const auto& d : p.days()) EXPECT_EQ(d.margin, Rational(2));
}

TEST(Margin, OneLeaveDropsBelowGate) {
    RequestSet q(kJan, {{"10003", 9, ShiftSymbol::off()}});
    auto p = staffing_margin(kJan, q, flat_demand(8), ids(10));
    EXPECT_EQ(p.day(9).available, 9);
    EXPECT_EQ(p.day(9).margin, Rational(9, 8));
    EXPECT_FALSE(p.passes(8, 10, Rational(5, 4)));
    EXPECT_TRUE(p.passes(10, 16, Rational(5, 4)));
    EXPECT_EQ(p.min_margin(1, 31), Rational(9, 8));
}

TEST(Margin, WorkRequestsAndStrangersDoNotCount) {
    RequestSet q(kJan, {{"10003", 9, ShiftSymbol::day()}, {"99999", 9, ShiftSymbol::off()}});
    auto p = staffing_margin(kJan, q, flat_demand(8), ids(10));
    EXPECT_EQ(p.day(9).available, 10);
}

TEST(Margin, UncoveredWeekdayIsConfigError) {
    DemandTable t;
    t.set(Weekday::Mon, "D", 3);
    EXPECT_THROW(staffing_margin(kJan, {}, t, ids(5)), ConfigError);
}

TEST(Margin, ReportMarksGatedDays) {
    RequestSet q(kJan, {{"10003", 2, ShiftSymbol::off()}});
    auto rep = render_margin_report(staffing_margin(kJan, q, flat_demand(8), ids(10)), Rational(5, 4));
    EXPECT_NE(rep.find("1,10,8,1.25,no\n"), std::string::npos);
    EXPECT_NE(rep.find("2,9,8,1.125,yes\n"), std::string::npos);
}

TEST(Flexibility, NoRequestsIsOne) {
    auto f = flexibility("10001", kJan, {}, one_row(kJan, "10001", 20));
    EXPECT_EQ(f.score, Rational(1));
}

TEST(Flexibility, HalfAtBoundary) {
    auto f = flexibility("10001", kJan, leaves(kJan, "10001", 10, 21), one_row(kJan, "10001", 20));
    EXPECT_EQ(f.requested, 10);
    EXPECT_EQ(f.assigned, 20);
    EXPECT_EQ(f.score, Rational(1, 2));
}

TEST(Flexibility, HeavyRequesterFallsBelow) {
    auto f = flexibility("10001", kJan, leaves(kJan, "10001", 16, 16), one_row(kJan, "10001", 20));
    EXPECT_EQ(f.score, Rational(1, 5));
    EXPECT_LT(*f.score, Rational(1, 2));
}

TEST(Flexibility, NeverAssignedHasNoScore) {
    auto f = flexibility("10001", kJan, {}, one_row(kJan, "10001", 0));
    EXPECT_TRUE(f.never_assigned());
    EXPECT_THROW(flexibility("10002", kJan, {}, one_row(kJan, "10001", 5)), DataError);
}

namespace {

Roster two_staff() {
    std::vector<ShiftSymbol> a, b;
    for (int d = 1; d <= 31; ++d) {
        a.push_back(d <= 20 ? ShiftSymbol::day() : ShiftSymbol::off());
        b.push_back(d <= 20 ? ShiftSymbol::day() : ShiftSymbol::off());
    }
    return Roster(kJan, {"10001", "10002"}, {a, b});
}

RequestSet heavy_second() {
    std::vector<Request> q;
    for (int i = 0; i < 11; ++i) q.push_back({"10002", 21 + i, ShiftSymbol::off()});
    q.push_back({"10001", 21, ShiftSymbol::off()});
    return RequestSet(kJan, q);
}

}  // namespace

TEST(Eligibles, ZeroThresholdKeepsEveryone) {
    auto r = two_staff();
    EXPECT_EQ(eligibles(r.staff(), kJan, heavy_second(), r, Rational(0)), r.staff());
}

TEST(Eligibles, LowFlexibilityStaffDropped) {
    auto r = two_staff();
    EXPECT_EQ(eligibles(r.staff(), kJan, heavy_second(), r, Rational(1, 2)), std::vector<StaffId>{"10001"});
}

TEST(Eligibles, AboveOneKeepsOnlyRequestFree) {
    auto r = two_staff();
    RequestSet q(kJan, {{"10002", 25, ShiftSymbol::off()}});
    EXPECT_EQ(eligibles(r.staff(), kJan, q, r, Rational(1) + Rational(1, 1000)), std::vector<StaffId>{});
    EXPECT_EQ(eligibles(r.staff(), kJan, q, r, Rational(1)), std::vector<StaffId>{"10001"});
}

TEST(Bootstrap, MinimumHeadcountPerWeekday) {
    auto r = two_staff();
    auto t = bootstrap_demand({r});
    // days 21..31 have nobody on D
    EXPECT_EQ(t.required(Weekday::Mon, "D"), 0);
    EXPECT_THROW(bootstrap_demand({}), ConfigError);
}
