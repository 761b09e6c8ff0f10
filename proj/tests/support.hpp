#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rosterlearn/solver.hpp"

namespace rosterlearn::testing {

// Random problem with at most `max_cells` cells: patterns, counts, demand and
// pins, each hard or soft at random.
inline ScheduleProblem random_problem(std::uint64_t seed, int max_cells = 20) {
    detail::Rng rng(seed);
    ScheduleProblem p;
    p.month = MonthId(2024, 1 + static_cast<int>(rng.below(12)));
    const int W = 1 + static_cast<int>(rng.below(3));
    int D = 2 + static_cast<int>(rng.below(static_cast<std::size_t>(max_cells / W - 1)));
    const int S = 2 + static_cast<int>(rng.below(2));
    // keep the oracle's enumeration small
    std::uint64_t space = 1;
    for (int i = 0; i < W * D; ++i) space *= static_cast<std::uint64_t>(S);
    while (space > (1u << 16) && D > 2) {
        --D;
        space = 1;
        for (int i = 0; i < W * D; ++i) space *= static_cast<std::uint64_t>(S);
    }
    p.horizon = D;
    std::vector<ShiftSymbol> syms = {ShiftSymbol::off(), ShiftSymbol::day()};
    if (S == 3) syms.push_back(ShiftSymbol::night("1N", "1"));
    p.shifts = ShiftAlphabet(syms);
    for (int i = 0; i < W; ++i) p.staff.push_back(std::to_string(10001 + i));
    p.seed = seed;
    p.time_budget_seconds = 30;

    int id = 0;
    auto add = [&](bool hard, ConstraintBody body) {
        ConstraintInstance c{"r" + std::to_string(++id), hard, 1 + static_cast<int>(rng.below(2)), std::move(body), {"rand", 0, Origin::Manual}};
        if (hard) {
            c.weight = 1;
            p.constraints.hard.push_back(std::move(c));
        } else {
            p.constraints.soft.push_back(std::move(c));
        }
    };
    auto sym = [&] { return syms[rng.below(syms.size())].code(); };
    const int n_constraints = 2 + static_cast<int>(rng.below(5));
    for (int k = 0; k < n_constraints; ++k) {
        bool hard = rng.chance(40);
        switch (rng.below(4)) {
            case 0: {
                int len = 2 + static_cast<int>(rng.below(2));
                if (len > D) len = D;
                AllowedPatternSet a;
                if (rng.chance(50)) a.staff = p.staff[rng.below(p.staff.size())];
                a.length = len;
                int count = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(S * S)));
                for (int j = 0; j < count; ++j) {
                    std::vector<std::string> seq;
                    for (int t = 0; t < len; ++t) seq.push_back(sym());
                    a.allowed.push_back(seq);
                }
                std::sort(a.allowed.begin(), a.allowed.end());
                a.allowed.erase(std::unique(a.allowed.begin(), a.allowed.end()), a.allowed.end());
                add(hard, a);
                break;
            }
            case 1: {
                std::int64_t lo = static_cast<std::int64_t>(rng.below(static_cast<std::size_t>(D)));
                std::int64_t hi = lo + static_cast<std::int64_t>(rng.below(3));
                std::optional<std::string> s;
                if (rng.chance(70)) s = sym();
                add(hard, CountRange{p.staff[rng.below(p.staff.size())], s, lo, hi});
                break;
            }
            case 2: {
                std::int64_t lo = static_cast<std::int64_t>(rng.below(static_cast<std::size_t>(W + 1)));
                add(hard, DemandRange{1 + static_cast<int>(rng.below(static_cast<std::size_t>(D))), sym(), lo,
                                      lo + static_cast<std::int64_t>(rng.below(2))});
                break;
            }
            default:
                add(hard, RequestPin{p.staff[rng.below(p.staff.size())], 1 + static_cast<int>(rng.below(static_cast<std::size_t>(D))), sym()});
        }
    }
    for (const auto& e : p.staff) {
        for (int d = 1; d <= D; ++d) add(true, AssignExactlyOne{e, d});
    }
    return p;
}

inline ConstraintInstance instance(const std::string& id, bool hard, ConstraintBody body, Provenance prov) {
    return ConstraintInstance{id, hard, 1, std::move(body), std::move(prov)};
}

inline ConstraintInstance t2_set(const std::string& id, int n, std::vector<std::vector<std::string>> allowed) {
    std::sort(allowed.begin(), allowed.end());
    return instance(id, true, AllowedPatternSet{std::nullopt, n, std::move(allowed)}, {"T2", n, Origin::Mined});
}

inline std::vector<std::vector<std::string>> all_sequences(const std::vector<std::string>& codes, int n) {
    std::vector<std::vector<std::string>> out{{}};
    for (int k = 0; k < n; ++k) {
        std::vector<std::vector<std::string>> next;
        for (const auto& prefix : out) {
            for (const auto& c : codes) {
                auto s = prefix;
                s.push_back(c);
                next.push_back(std::move(s));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline ScheduleProblem ladder_base(int staff, int horizon) {
    ScheduleProblem p;
    p.month = MonthId(2024, 1);
    p.horizon = horizon;
    p.shifts = ShiftAlphabet({ShiftSymbol::off(), ShiftSymbol::day()});
    for (int i = 0; i < staff; ++i) p.staff.push_back(std::to_string(10001 + i));
    p.time_budget_seconds = 30;
    for (const auto& e : p.staff) {
        for (int d = 1; d <= horizon; ++d) {
            p.constraints.hard.push_back(instance("one:" + e + ":" + std::to_string(d), true, AssignExactlyOne{e, d},
                                                  {"one", 1, Origin::Default}));
        }
    }
    return p;
}

// Solvable as posed.
inline ScheduleProblem ladder_feasible() {
    auto p = ladder_base(2, 4);
    p.constraints.hard.push_back(t2_set("t2/2", 2, all_sequences({"-", "D"}, 2)));
    p.constraints.hard.push_back(instance("pin", true, RequestPin{"10001", 2, "-"}, {"pin", 1, Origin::Default}));
    p.constraints.soft.push_back(instance("s", false, CountRange{"10002", "D", 2, 2}, {"T3", 0, Origin::Mined}));
    return p;
}

// One staff, seven days. The only allowed 7-window is all D, which the Off
// pin on day 7 contradicts; the 6-day set still admits D D D D D D -.
inline ScheduleProblem ladder_seven_day_block() {
    auto p = ladder_base(1, 7);
    p.constraints.hard.push_back(t2_set("t2/7", 7, {std::vector<std::string>(7, "D")}));
    p.constraints.hard.push_back(
        t2_set("t2/6", 6, {std::vector<std::string>(6, "D"), {"D", "D", "D", "D", "D", "-"}}));
    p.constraints.hard.push_back(instance("pin", true, RequestPin{"10001", 7, "-"}, {"pin", 1, Origin::Default}));
    return p;
}

// Two staff, three days, both needed on day 2, yet 10001 asked for day 2 off.
// The T2 sets allow everything, so demoting them cannot help; exactly one pin
// has to go.
inline ScheduleProblem ladder_pin_conflict() {
    auto p = ladder_base(2, 3);
    p.constraints.hard.push_back(t2_set("t2/3", 3, all_sequences({"-", "D"}, 3)));
    p.constraints.hard.push_back(t2_set("t2/2", 2, all_sequences({"-", "D"}, 2)));
    p.constraints.hard.push_back(instance("dem", true, DemandRange{2, "D", 2, 2}, {"demand", 1, Origin::Default}));
    p.constraints.hard.push_back(instance("pin:a", true, RequestPin{"10001", 2, "-"}, {"pin", 1, Origin::Default}));
    p.constraints.hard.push_back(instance("pin:b", true, RequestPin{"10002", 1, "-"}, {"pin", 1, Origin::Default}));
    return p;
}

// Same conflict with no T2 sets at all: the only rung is a pin drop.
inline ScheduleProblem ladder_pin_only() {
    auto p = ladder_base(2, 3);
    p.constraints.hard.push_back(instance("dem", true, DemandRange{2, "D", 2, 2}, {"demand", 1, Origin::Default}));
    p.constraints.hard.push_back(instance("pin:a", true, RequestPin{"10001", 2, "-"}, {"pin", 1, Origin::Default}));
    p.constraints.hard.push_back(instance("pin:b", true, RequestPin{"10002", 1, "-"}, {"pin", 1, Origin::Default}));
    return p;
}

}  // namespace rosterlearn::testing
