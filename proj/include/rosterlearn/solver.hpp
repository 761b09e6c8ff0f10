#pragma once

// Rostering solver over one symbol per (day, staff) cell.
//
// Phases:
//   1. exact branch and bound in lexicographic cell/symbol order (small
//      problems, node limited); completes with Optimal or Infeasible
//   2. restarted randomized DFS (dom/wdeg ordering), hard constraints only,
//      propagation on pattern windows and counts; when it stalls, destroy and
//      repair rounds around the best partial assignment
//   3. tabu search on 1000*hard + soft, from the phase-2 schedule or from
//      the best partial assignment
// All budgets are counted in nodes/iterations; the wall-clock budget is only
// a safety cap.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosterlearn/compiler.hpp"
#include "rosterlearn/roster.hpp"

namespace rosterlearn {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimedOut };

inline std::string_view status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::TimedOut: return "timed_out";
    }
    return "?";
}

struct SolverLimits {
    std::size_t exact_cell_limit = 48;
    std::uint64_t exact_node_limit = 2'000'000;
    std::uint64_t dfs_node_limit = 15'000;
    std::uint64_t dfs_restart_base = 3'000;
    std::uint64_t repair_rounds = 400;
    std::uint64_t repair_node_limit = 3'000;
    std::uint64_t repair_restart_base = 300;
    std::uint64_t tabu_iterations = 20'000;
    std::uint64_t tabu_stall = 3'000;
    int tabu_candidates = 40;
    std::size_t core_cell_limit = 20;  // deletion-filter explanation for tiny infeasible problems
};

struct ScheduleProblem {
    MonthId month;
    std::vector<StaffId> staff;
    ShiftAlphabet shifts = ShiftAlphabet::standard();
    CompiledSet constraints;
    double time_budget_seconds = 60.0;
    std::uint64_t seed = 1;
    SolverLimits limits;
    int horizon = 0;  // days planned from day 1; 0 is the whole month

    int days() const { return horizon ? horizon : month.last_day(); }
};

struct Schedule {
    std::optional<Roster> roster;
    std::int64_t objective = 0;
    SolveStatus status = SolveStatus::TimedOut;
    std::string explanation;
    std::optional<std::int64_t> lower_bound;

    bool ok() const { return status == SolveStatus::Optimal || status == SolveStatus::Feasible; }
};

struct InstanceViolation {
    std::string id;
    bool hard = true;
    int weight = 1;
    std::int64_t count = 0;
};

struct ViolationTally {
    std::vector<InstanceViolation> instances;
    std::int64_t hard_violations = 0;
    std::int64_t soft_objective = 0;
};

// Direct per-instance evaluation from the roster alone. Patterns count one
// violation per offending window; every other body is 0/1.
inline ViolationTally check_violations(const Roster& roster, const CompiledSet& set) {
    ViolationTally tally;
    auto row_of = [&](const StaffId& s) {
        auto idx = roster.index_of(s);
        if (!idx) throw DataError("constraint refers to staff " + s + " not in the " + roster.month().to_string() + " schedule");
        return *idx;
    };
    auto check_day = [&](int d) {
        if (d < 1 || d > roster.days()) {
            throw DataError("constraint refers to day " + std::to_string(d) + " outside " + roster.month().to_string());
        }
    };
    auto count_one = [&](const ConstraintInstance& c) -> std::int64_t {
        return std::visit(
            [&](const auto& x) -> std::int64_t {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, AllowedPatternSet>) {
                    std::set<std::vector<std::string>> allowed(x.allowed.begin(), x.allowed.end());
                    std::vector<std::size_t> rows;
                    if (x.staff) {
                        rows.push_back(row_of(*x.staff));
                    } else {
                        for (std::size_t i = 0; i < roster.staff().size(); ++i) rows.push_back(i);
                    }
                    std::int64_t bad = 0;
                    for (auto r : rows) {
                        for (int start = 1; start + x.length - 1 <= roster.days(); ++start) {
                            std::vector<std::string> w;
                            for (int d = start; d < start + x.length; ++d) w.push_back(roster.at(r, d).code());
                            bad += allowed.count(w) ? 0 : 1;
                        }
                    }
                    return bad;
                } else if constexpr (std::is_same_v<T, CountRange>) {
                    auto r = row_of(x.staff);
                    std::int64_t n = 0;
                    for (int d = 1; d <= roster.days(); ++d) {
                        const auto& s = roster.at(r, d);
                        n += (x.shift ? s.code() == *x.shift : !s.is_off()) ? 1 : 0;
                    }
                    return (n < x.lower || n > x.upper) ? 1 : 0;
                } else if constexpr (std::is_same_v<T, DemandRange>) {
                    check_day(x.day);
                    std::int64_t n = 0;
                    for (std::size_t i = 0; i < roster.staff().size(); ++i) n += roster.at(i, x.day).code() == x.shift ? 1 : 0;
                    return (n < x.lower || n > x.upper) ? 1 : 0;
                } else if constexpr (std::is_same_v<T, AssignExactlyOne>) {
                    row_of(x.staff);
                    check_day(x.day);
                    return 0;
                } else {
                    check_day(x.day);
                    return roster.at(row_of(x.staff), x.day).code() == x.symbol ? 0 : 1;
                }
            },
            c.body);
    };
    for (const auto* group : {&set.hard, &set.soft}) {
        for (const auto& c : *group) {
            InstanceViolation v{c.id, c.hard, c.weight, count_one(c)};
            if (c.hard) {
                tally.hard_violations += v.count;
            } else {
                tally.soft_objective += v.count * c.weight;
            }
            tally.instances.push_back(std::move(v));
        }
    }
    return tally;
}

namespace detail {

// Deterministic across standard libraries: no std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::mt19937_64 eng_;
};

using Mask = std::uint16_t;

inline int popcount(Mask m) { return std::popcount(static_cast<unsigned>(m)); }
inline int lowest(Mask m) { return std::countr_zero(static_cast<unsigned>(m)); }

struct PatternTable {
    int n = 0;
    std::vector<std::uint64_t> codes;  // sorted
    std::vector<std::uint64_t> bitmap;
    std::vector<std::array<std::uint8_t, 8>> digits;

    bool contains(std::uint64_t code) const {
        if (!bitmap.empty()) return (bitmap[code >> 6] >> (code & 63)) & 1u;
        return std::binary_search(codes.begin(), codes.end(), code);
    }
};

enum class UnitKind : std::uint8_t { Window, Count, Pin };

struct Unit {
    UnitKind kind = UnitKind::Window;
    bool hard = true;
    int weight = 1;
    int instance = 0;  // index into Model::instances
    int table = -1;
    std::vector<int> cells;
    Mask mask = 0;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

struct Model {
    int W = 0, D = 0, S = 0;
    Mask full = 0;
    Mask working = 0;
    std::vector<const ConstraintInstance*> instances;
    std::vector<PatternTable> tables;
    std::vector<Unit> units;
    std::vector<std::vector<int>> watch_all;
    std::vector<std::vector<int>> watch_hard;
    std::vector<int> hard_pins;
    std::vector<std::uint64_t> power;  // S^k

    int cell(int staff, int day0) const { return day0 * W + staff; }
    int cells() const { return W * D; }
};

inline Model build_model(const ScheduleProblem& p, const CompiledSet& set) {
    Model m;
    m.W = static_cast<int>(p.staff.size());
    m.D = p.days();
    m.S = static_cast<int>(p.shifts.symbols().size());
    if (m.S < 1 || m.S > 16) throw DataError("solver supports 1..16 shift symbols, got " + std::to_string(m.S));
    if (m.W < 1) throw DataError("schedule problem has no staff");
    m.full = static_cast<Mask>((1u << m.S) - 1u);
    for (int s = 0; s < m.S; ++s) {
        if (!p.shifts.symbols()[static_cast<std::size_t>(s)].is_off()) m.working |= static_cast<Mask>(1u << s);
    }
    m.power.assign(9, 1);
    for (int k = 1; k < 9; ++k) m.power[static_cast<std::size_t>(k)] = m.power[static_cast<std::size_t>(k - 1)] * static_cast<std::uint64_t>(m.S);

    std::map<StaffId, int> staff_index;
    for (int i = 0; i < m.W; ++i) {
        if (!staff_index.emplace(p.staff[static_cast<std::size_t>(i)], i).second) {
            throw DataError("duplicate staff id " + p.staff[static_cast<std::size_t>(i)]);
        }
    }
    auto staff_at = [&](const StaffId& s) {
        auto it = staff_index.find(s);
        if (it == staff_index.end()) throw DataError("constraint refers to staff " + s + " outside the problem");
        return it->second;
    };
    auto sym_at = [&](const std::string& code) -> std::optional<int> {
        auto i = p.shifts.index_of(code);
        if (!i) return std::nullopt;
        return static_cast<int>(*i);
    };
    auto day_check = [&](int d) {
        if (d < 1 || d > m.D) throw DataError("constraint day " + std::to_string(d) + " outside " + p.month.to_string());
    };

    for (const auto* group : {&set.hard, &set.soft}) {
        for (const auto& c : *group) {
            const int inst = static_cast<int>(m.instances.size());
            m.instances.push_back(&c);
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, AllowedPatternSet>) {
                        if (x.length < 1 || x.length > 8) throw DataError("pattern length must be 1..8");
                        PatternTable t;
                        t.n = x.length;
                        for (const auto& seq : x.allowed) {
                            if (static_cast<int>(seq.size()) != x.length) {
                                throw DataError("pattern of length " + std::to_string(seq.size()) + " in a length-" +
                                                std::to_string(x.length) + " set");
                            }
                            std::uint64_t code = 0;
                            std::array<std::uint8_t, 8> dg{};
                            bool known = true;
                            for (int i = 0; i < x.length; ++i) {
                                auto s = sym_at(seq[static_cast<std::size_t>(i)]);
                                if (!s) {
                                    known = false;
                                    break;
                                }
                                dg[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(*s);
                                code = code * static_cast<std::uint64_t>(m.S) + static_cast<std::uint64_t>(*s);
                            }
                            if (!known) continue;
                            t.codes.push_back(code);
                            t.digits.push_back(dg);
                        }
                        std::vector<std::size_t> order(t.codes.size());
                        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
                        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return t.codes[a] < t.codes[b]; });
                        std::vector<std::uint64_t> codes;
                        std::vector<std::array<std::uint8_t, 8>> digits;
                        for (auto i : order) {
                            if (!codes.empty() && codes.back() == t.codes[i]) continue;
                            codes.push_back(t.codes[i]);
                            digits.push_back(t.digits[i]);
                        }
                        t.codes = std::move(codes);
                        t.digits = std::move(digits);
                        std::uint64_t space = m.power[static_cast<std::size_t>(x.length)];
                        if (space <= (1ull << 24)) {
                            t.bitmap.assign(static_cast<std::size_t>((space + 63) / 64), 0);
                            for (auto code : t.codes) t.bitmap[code >> 6] |= 1ull << (code & 63);
                        }
                        const int table = static_cast<int>(m.tables.size());
                        m.tables.push_back(std::move(t));
                        std::vector<int> rows;
                        if (x.staff) {
                            rows.push_back(staff_at(*x.staff));
                        } else {
                            for (int i = 0; i < m.W; ++i) rows.push_back(i);
                        }
                        for (int r : rows) {
                            for (int start = 0; start + x.length <= m.D; ++start) {
                                Unit u;
                                u.kind = UnitKind::Window;
                                u.hard = c.hard;
                                u.weight = c.weight;
                                u.instance = inst;
                                u.table = table;
                                for (int k = 0; k < x.length; ++k) u.cells.push_back(m.cell(r, start + k));
                                m.units.push_back(std::move(u));
                            }
                        }
                    } else if constexpr (std::is_same_v<T, CountRange>) {
                        Unit u;
                        u.kind = UnitKind::Count;
                        u.hard = c.hard;
                        u.weight = c.weight;
                        u.instance = inst;
                        if (x.shift) {
                            auto s = sym_at(*x.shift);
                            u.mask = s ? static_cast<Mask>(1u << *s) : Mask{0};
                        } else {
                            u.mask = m.working;
                        }
                        int r = staff_at(x.staff);
                        for (int d = 0; d < m.D; ++d) u.cells.push_back(m.cell(r, d));
                        u.lo = x.lower;
                        u.hi = x.upper;
                        m.units.push_back(std::move(u));
                    } else if constexpr (std::is_same_v<T, DemandRange>) {
                        day_check(x.day);
                        Unit u;
                        u.kind = UnitKind::Count;
                        u.hard = c.hard;
                        u.weight = c.weight;
                        u.instance = inst;
                        auto s = sym_at(x.shift);
                        u.mask = s ? static_cast<Mask>(1u << *s) : Mask{0};
                        for (int i = 0; i < m.W; ++i) u.cells.push_back(m.cell(i, x.day - 1));
                        u.lo = x.lower;
                        u.hi = x.upper;
                        m.units.push_back(std::move(u));
                    } else if constexpr (std::is_same_v<T, AssignExactlyOne>) {
                        staff_at(x.staff);
                        day_check(x.day);
                    } else {
                        day_check(x.day);
                        Unit u;
                        u.kind = UnitKind::Pin;
                        u.hard = c.hard;
                        u.weight = c.weight;
                        u.instance = inst;
                        auto s = sym_at(x.symbol);
                        if (!s) throw DataError("request symbol '" + x.symbol + "' not in the shift alphabet");
                        u.mask = static_cast<Mask>(1u << *s);
                        u.cells.push_back(m.cell(staff_at(x.staff), x.day - 1));
                        if (c.hard) m.hard_pins.push_back(static_cast<int>(m.units.size()));
                        m.units.push_back(std::move(u));
                    }
                },
                c.body);
        }
    }
    m.watch_all.assign(static_cast<std::size_t>(m.cells()), {});
    m.watch_hard.assign(static_cast<std::size_t>(m.cells()), {});
    for (int ui = 0; ui < static_cast<int>(m.units.size()); ++ui) {
        const auto& u = m.units[static_cast<std::size_t>(ui)];
        for (int c : u.cells) {
            m.watch_all[static_cast<std::size_t>(c)].push_back(ui);
            if (u.hard) m.watch_hard[static_cast<std::size_t>(c)].push_back(ui);
        }
    }
    return m;
}

using Domains = std::vector<Mask>;

// Enumerates the cartesian product of window domains up to `cap` combinations.
// Returns false when the product is larger than the cap.
template <class F>
bool for_each_window_code(const Model& m, const Unit& u, const Domains& dom, std::uint64_t cap, F&& f) {
    std::uint64_t product = 1;
    for (int c : u.cells) {
        product *= static_cast<std::uint64_t>(popcount(dom[static_cast<std::size_t>(c)]));
        if (product > cap) return false;
    }
    const int n = static_cast<int>(u.cells.size());
    std::array<int, 8> sym{};
    std::array<Mask, 8> rest{};
    for (int i = 0; i < n; ++i) {
        rest[static_cast<std::size_t>(i)] = dom[static_cast<std::size_t>(u.cells[static_cast<std::size_t>(i)])];
        if (!rest[static_cast<std::size_t>(i)]) return true;
        sym[static_cast<std::size_t>(i)] = lowest(rest[static_cast<std::size_t>(i)]);
    }
    while (true) {
        std::uint64_t code = 0;
        for (int i = 0; i < n; ++i) code = code * static_cast<std::uint64_t>(m.S) + static_cast<std::uint64_t>(sym[static_cast<std::size_t>(i)]);
        f(code, sym);
        int i = n - 1;
        for (; i >= 0; --i) {
            Mask d = dom[static_cast<std::size_t>(u.cells[static_cast<std::size_t>(i)])];
            Mask higher = static_cast<Mask>(d & ~((2u << sym[static_cast<std::size_t>(i)]) - 1u));
            if (higher) {
                sym[static_cast<std::size_t>(i)] = lowest(higher);
                break;
            }
            sym[static_cast<std::size_t>(i)] = lowest(d);
        }
        if (i < 0) return true;
    }
}

class Propagator {
public:
    explicit Propagator(const Model& m) : m_(m), queued_(m.units.size(), 0) {}

    static constexpr std::uint64_t kWindowCap = 256;

    // Returns -1 on success, or the index of the unit that failed.
    int run(Domains& dom, const std::vector<int>& changed_cells) {
        for (int c : changed_cells) push_cell(c);
        return drain(dom);
    }

    int run_all(Domains& dom) {
        for (int ui = 0; ui < static_cast<int>(m_.units.size()); ++ui) {
            if (m_.units[static_cast<std::size_t>(ui)].hard) push_unit(ui);
        }
        return drain(dom);
    }

private:
    void push_unit(int ui) {
        if (queued_[static_cast<std::size_t>(ui)]) return;
        queued_[static_cast<std::size_t>(ui)] = 1;
        queue_.push_back(ui);
    }
    void push_cell(int c) {
        for (int ui : m_.watch_hard[static_cast<std::size_t>(c)]) push_unit(ui);
    }

    int drain(Domains& dom) {
        std::size_t head = 0;
        int failed = -1;
        while (head < queue_.size()) {
            int ui = queue_[head++];
            queued_[static_cast<std::size_t>(ui)] = 0;
            if (failed >= 0) continue;
            if (!revise(m_.units[static_cast<std::size_t>(ui)], dom)) failed = ui;
        }
        queue_.clear();
        return failed;
    }

    bool narrow(Domains& dom, int c, Mask keep) {
        Mask& d = dom[static_cast<std::size_t>(c)];
        Mask nd = static_cast<Mask>(d & keep);
        if (nd == d) return true;
        d = nd;
        if (!nd) return false;
        push_cell(c);
        return true;
    }

    bool revise(const Unit& u, Domains& dom) {
        switch (u.kind) {
            case UnitKind::Pin:
                return narrow(dom, u.cells[0], u.mask);
            case UnitKind::Count: {
                std::int64_t must = 0, could = 0;
                for (int c : u.cells) {
                    Mask d = dom[static_cast<std::size_t>(c)];
                    if (d & u.mask) ++could;
                    if (d && !(d & ~u.mask)) ++must;
                }
                if (must > u.hi || could < u.lo) return false;
                if (must == u.hi && could > must) {
                    for (int c : u.cells) {
                        Mask d = dom[static_cast<std::size_t>(c)];
                        if ((d & u.mask) && (d & ~u.mask)) {
                            if (!narrow(dom, c, static_cast<Mask>(~u.mask))) return false;
                        }
                    }
                } else if (could == u.lo && could > must) {
                    for (int c : u.cells) {
                        Mask d = dom[static_cast<std::size_t>(c)];
                        if ((d & u.mask) && (d & ~u.mask)) {
                            if (!narrow(dom, c, u.mask)) return false;
                        }
                    }
                }
                return true;
            }
            case UnitKind::Window: {
                const auto& t = m_.tables[static_cast<std::size_t>(u.table)];
                const int n = static_cast<int>(u.cells.size());
                std::array<Mask, 8> support{};
                bool any = false;
                bool done = for_each_window_code(m_, u, dom, kWindowCap, [&](std::uint64_t code, const std::array<int, 8>& sym) {
                    if (!t.contains(code)) return;
                    any = true;
                    for (int i = 0; i < n; ++i) support[static_cast<std::size_t>(i)] |= static_cast<Mask>(1u << sym[static_cast<std::size_t>(i)]);
                });
                if (!done) {
                    if (t.codes.size() > kWindowCap * 4) return true;
                    for (const auto& dg : t.digits) {
                        bool fits = true;
                        for (int i = 0; i < n && fits; ++i) {
                            fits = (dom[static_cast<std::size_t>(u.cells[static_cast<std::size_t>(i)])] >> dg[static_cast<std::size_t>(i)]) & 1u;
                        }
                        if (!fits) continue;
                        any = true;
                        for (int i = 0; i < n; ++i) support[static_cast<std::size_t>(i)] |= static_cast<Mask>(1u << dg[static_cast<std::size_t>(i)]);
                    }
                }
                if (!any) return false;
                for (int i = 0; i < n; ++i) {
                    if (!narrow(dom, u.cells[static_cast<std::size_t>(i)], support[static_cast<std::size_t>(i)])) return false;
                }
                return true;
            }
        }
        return true;
    }

    const Model& m_;
    std::vector<char> queued_;
    std::vector<int> queue_;
};

// Soft weight that is violated whatever the remaining choices are.
inline std::int64_t soft_lower_bound(const Model& m, const Domains& dom) {
    std::int64_t lb = 0;
    for (const auto& u : m.units) {
        if (u.hard) continue;
        bool violated = false;
        switch (u.kind) {
            case UnitKind::Pin:
                violated = !(dom[static_cast<std::size_t>(u.cells[0])] & u.mask);
                break;
            case UnitKind::Count: {
                std::int64_t must = 0, could = 0;
                for (int c : u.cells) {
                    Mask d = dom[static_cast<std::size_t>(c)];
                    if (d & u.mask) ++could;
                    if (d && !(d & ~u.mask)) ++must;
                }
                violated = must > u.hi || could < u.lo;
                break;
            }
            case UnitKind::Window: {
                const auto& t = m.tables[static_cast<std::size_t>(u.table)];
                bool any = false;
                bool done = for_each_window_code(m, u, dom, 64, [&](std::uint64_t code, const std::array<int, 8>&) {
                    any = any || t.contains(code);
                });
                violated = done && !any;
                break;
            }
        }
        if (violated) lb += u.weight;
    }
    return lb;
}

class Clock {
public:
    explicit Clock(double seconds)
        : deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds))) {}
    bool expired() {
        if (++calls_ % 256 != 0) return hit_;
        hit_ = hit_ || std::chrono::steady_clock::now() >= deadline_;
        return hit_;
    }

private:
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t calls_ = 0;
    bool hit_ = false;
};

struct ExactResult {
    bool complete = false;
    std::optional<Domains> best;
    std::int64_t objective = std::numeric_limits<std::int64_t>::max();
    std::uint64_t nodes = 0;
};

class ExactSearch {
public:
    ExactSearch(const Model& m, std::uint64_t node_limit, Clock& clock) : m_(m), prop_(m), limit_(node_limit), clock_(clock) {}

    ExactResult run(const Domains& root) {
        result_ = {};
        aborted_ = false;
        Domains d = root;
        dfs(d);
        result_.complete = !aborted_;
        return result_;
    }

private:
    void dfs(Domains& dom) {
        if (aborted_) return;
        if (++result_.nodes > limit_ || clock_.expired()) {
            aborted_ = true;
            return;
        }
        std::int64_t lb = soft_lower_bound(m_, dom);
        if (lb >= result_.objective) return;
        int pick = -1;
        for (int c = 0; c < m_.cells(); ++c) {
            if (popcount(dom[static_cast<std::size_t>(c)]) > 1) {
                pick = c;
                break;
            }
        }
        if (pick < 0) {
            result_.objective = lb;
            result_.best = dom;
            return;
        }
        Mask d = dom[static_cast<std::size_t>(pick)];
        for (int s = 0; s < m_.S; ++s) {
            if (!((d >> s) & 1u)) continue;
            Domains child = dom;
            child[static_cast<std::size_t>(pick)] = static_cast<Mask>(1u << s);
            if (prop_.run(child, {pick}) >= 0) continue;
            dfs(child);
            if (aborted_) return;
        }
    }

    const Model& m_;
    Propagator prop_;
    std::uint64_t limit_;
    Clock& clock_;
    ExactResult result_;
    bool aborted_ = false;
};

inline std::uint64_t luby(std::uint64_t i) {
    // 1 1 2 1 1 2 4 ...
    std::uint64_t k = 1;
    while ((1ull << k) - 1 < i) ++k;
    while (true) {
        if (i == (1ull << k) - 1) return 1ull << (k - 1);
        i -= (1ull << (k - 1)) - 1;
        k = 1;
        while ((1ull << k) - 1 < i) ++k;
    }
}

class RandomizedSearch {
public:
    RandomizedSearch(const Model& m, Rng& rng, Clock& clock) : m_(m), prop_(m), rng_(rng), clock_(clock) {}

    std::optional<Domains> run(const Domains& root, std::uint64_t node_budget, std::uint64_t restart_base) {
        best_partial_ = root;
        best_fixed_ = -1;
        weight_.assign(static_cast<std::size_t>(m_.cells()), 1);
        std::uint64_t used = 0;
        for (std::uint64_t restart = 1; used < node_budget; ++restart) {
            tie_.resize(static_cast<std::size_t>(m_.cells()));
            for (auto& t : tie_) t = rng_.next();
            limit_ = std::min(node_budget - used, restart_base * luby(restart));
            nodes_ = 0;
            aborted_ = false;
            Domains d = root;
            auto found = dfs(d);
            used += nodes_;
            if (found) return found;
            if (clock_.expired()) break;
        }
        return std::nullopt;
    }

    const Domains& best_partial() const { return best_partial_; }

private:
    std::optional<Domains> dfs(Domains& dom) {
        if (++nodes_ > limit_ || clock_.expired()) {
            aborted_ = true;
            return std::nullopt;
        }
        // dom/wdeg: smallest domain per unit of conflict weight; ties go to
        // the lower staff index, then the restart's random order.
        int pick = -1;
        int pick_size = 99;
        int fixed = 0;
        for (int c = 0; c < m_.cells(); ++c) {
            int sz = popcount(dom[static_cast<std::size_t>(c)]);
            if (sz == 1) {
                ++fixed;
                continue;
            }
            if (pick < 0) {
                pick = c;
                pick_size = sz;
                continue;
            }
            const auto uc = static_cast<std::size_t>(c), up = static_cast<std::size_t>(pick);
            std::uint64_t a = static_cast<std::uint64_t>(sz) * weight_[up];
            std::uint64_t b = static_cast<std::uint64_t>(pick_size) * weight_[uc];
            int staff = c % m_.W, pick_staff = pick % m_.W;
            if (a < b || (a == b && (staff < pick_staff || (staff == pick_staff && tie_[uc] < tie_[up])))) {
                pick = c;
                pick_size = sz;
            }
        }
        if (fixed > best_fixed_) {
            best_fixed_ = fixed;
            best_partial_ = dom;
        }
        if (pick < 0) return dom;

        std::vector<std::pair<std::uint64_t, int>> order;
        Mask d = dom[static_cast<std::size_t>(pick)];
        for (int s = 0; s < m_.S; ++s) {
            if (!((d >> s) & 1u)) continue;
            std::uint64_t cost = soft_damage(dom, pick, s);
            order.push_back({(cost << 32) | (rng_.next() & 0xffffffffu), s});
        }
        std::sort(order.begin(), order.end());
        for (const auto& [key, s] : order) {
            Domains child = dom;
            child[static_cast<std::size_t>(pick)] = static_cast<Mask>(1u << s);
            if (int failed = prop_.run(child, {pick}); failed >= 0) {
                for (int c : m_.units[static_cast<std::size_t>(failed)].cells) ++weight_[static_cast<std::size_t>(c)];
                continue;
            }
            auto found = dfs(child);
            if (found || aborted_) return found;
        }
        return std::nullopt;
    }

    // Soft units that this choice would break outright.
    std::uint64_t soft_damage(const Domains& dom, int cell, int s) {
        std::uint64_t cost = 0;
        const Mask bit = static_cast<Mask>(1u << s);
        for (int ui : m_.watch_all[static_cast<std::size_t>(cell)]) {
            const auto& u = m_.units[static_cast<std::size_t>(ui)];
            if (u.hard) continue;
            if (u.kind == UnitKind::Window) {
                std::uint64_t code = 0;
                bool complete = true;
                for (int c : u.cells) {
                    int sym = c == cell ? s : -1;
                    if (sym < 0) {
                        Mask dc = dom[static_cast<std::size_t>(c)];
                        if (popcount(dc) != 1) {
                            complete = false;
                            break;
                        }
                        sym = lowest(dc);
                    }
                    code = code * static_cast<std::uint64_t>(m_.S) + static_cast<std::uint64_t>(sym);
                }
                if (complete && !m_.tables[static_cast<std::size_t>(u.table)].contains(code)) cost += static_cast<std::uint64_t>(u.weight);
            } else if (u.kind == UnitKind::Pin) {
                if (!(u.mask & bit)) cost += static_cast<std::uint64_t>(u.weight);
            } else {
                std::int64_t must = 0, could = 0;
                for (int c : u.cells) {
                    if (c == cell) continue;
                    Mask dc = dom[static_cast<std::size_t>(c)];
                    if (dc & u.mask) ++could;
                    if (dc && !(dc & ~u.mask)) ++must;
                }
                bool in = u.mask & bit;
                if ((in && must + 1 > u.hi) || (!in && could < u.lo)) cost += static_cast<std::uint64_t>(u.weight);
            }
        }
        return cost;
    }

    const Model& m_;
    Propagator prop_;
    Rng& rng_;
    Clock& clock_;
    std::vector<std::uint64_t> tie_;
    std::vector<std::uint64_t> weight_;
    std::uint64_t limit_ = 0;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    Domains best_partial_;
    int best_fixed_ = -1;
};

inline int fixed_count(const Domains& dom) {
    int n = 0;
    for (Mask d : dom) n += popcount(d) == 1 ? 1 : 0;
    return n;
}

// Destroy and repair around a stuck partial assignment: keep most fixed cells,
// free the rows or week-long day blocks around the open cells plus a few random
// rows, then rerun the randomized search on what is left.
inline std::optional<Domains> repair(const Model& m, const Domains& root, Domains best, const SolverLimits& lim, Rng& rng,
                                     Clock& clock) {
    Propagator prop(m);
    for (std::uint64_t round = 0; round < lim.repair_rounds && !clock.expired(); ++round) {
        std::vector<char> freed(static_cast<std::size_t>(m.cells()), 0);
        auto free_row = [&](int staff) {
            for (int d = 0; d < m.D; ++d) freed[static_cast<std::size_t>(m.cell(staff, d))] = 1;
        };
        for (int c = 0; c < m.cells(); ++c) {
            if (popcount(best[static_cast<std::size_t>(c)]) == 1) continue;
            if (rng.chance(50)) {
                free_row(c % m.W);
            } else {
                int d0 = std::max(0, c / m.W - 3);
                for (int d = d0; d < std::min(m.D, d0 + 7); ++d) {
                    for (int w = 0; w < m.W; ++w) freed[static_cast<std::size_t>(m.cell(w, d))] = 1;
                }
            }
        }
        for (int k = 1 + static_cast<int>(rng.below(3)); k > 0; --k) free_row(static_cast<int>(rng.below(static_cast<std::size_t>(m.W))));
        Domains dom = root;
        for (int c = 0; c < m.cells(); ++c) {
            const auto uc = static_cast<std::size_t>(c);
            if (!freed[uc] && popcount(best[uc]) == 1) dom[uc] &= best[uc];
        }
        if (prop.run_all(dom) >= 0) continue;
        RandomizedSearch sub(m, rng, clock);
        if (auto found = sub.run(dom, lim.repair_node_limit, lim.repair_restart_base)) return found;
        if (fixed_count(sub.best_partial()) >= fixed_count(best)) best = sub.best_partial();
    }
    return std::nullopt;
}

// Tabu search over complete assignments. Score = 1000 * hard distance +
// soft weight * (8 * violated + distance); the reported objective is the
// plain weighted violation count.
class TabuSearch {
public:
    static constexpr std::int64_t kHard = 1000;

    TabuSearch(const Model& m, const Domains& root, Rng& rng, Clock& clock)
        : m_(m), root_(root), rng_(rng), clock_(clock) {}

    struct Outcome {
        std::optional<std::vector<int>> feasible;  // best hard-feasible assignment
        std::int64_t objective = 0;
    };

    Outcome run(std::vector<int> start, std::uint64_t iterations, std::uint64_t stall, int candidates) {
        init(std::move(start));
        Outcome out;
        auto record = [&] {
            if (hard_viol_ == 0 && (!out.feasible || soft_obj_ < out.objective)) {
                out.feasible = sym_;
                out.objective = soft_obj_;
            }
        };
        record();
        std::int64_t best_score = score_;
        std::vector<int> tabu(static_cast<std::size_t>(m_.cells()), 0);
        std::uint64_t since = 0;
        for (std::uint64_t it = 1; it <= iterations; ++it) {
            if (clock_.expired()) break;
            if (out.feasible && out.objective == 0) break;
            gather(candidates);
            if (moves_.empty()) break;
            std::int64_t best_delta = std::numeric_limits<std::int64_t>::max();
            std::size_t best_move = moves_.size();
            std::uint64_t best_tie = 0;
            for (std::size_t mi = 0; mi < moves_.size(); ++mi) {
                const auto& mv = moves_[mi];
                std::int64_t before = score_;
                apply(mv);
                std::int64_t delta = score_ - before;
                bool aspire = score_ < best_score;
                undo(mv);
                bool is_tabu = false;
                for (int k = 0; k < mv.n; ++k) is_tabu = is_tabu || tabu[static_cast<std::size_t>(mv.cell[k])] > static_cast<int>(it);
                if (is_tabu && !aspire) continue;
                std::uint64_t tie = rng_.next();
                if (delta < best_delta || (delta == best_delta && tie < best_tie)) {
                    best_delta = delta;
                    best_move = mi;
                    best_tie = tie;
                }
            }
            if (best_move == moves_.size()) continue;
            const auto mv = moves_[best_move];
            apply(mv);
            for (int k = 0; k < mv.n; ++k) {
                tabu[static_cast<std::size_t>(mv.cell[k])] = static_cast<int>(it) + 6 + static_cast<int>(rng_.below(10));
            }
            record();
            if (score_ < best_score) {
                best_score = score_;
                since = 0;
            } else if (++since > stall) {
                perturb();
                record();
                best_score = score_;
                since = 0;
            }
        }
        return out;
    }

    const std::vector<int>& current() const { return sym_; }

private:
    struct Move {
        int n = 0;
        std::array<int, 8> cell{};
        std::array<int, 8> to{};
        std::array<int, 8> from{};
    };

    bool allowed(int c, int s) const { return (root_[static_cast<std::size_t>(c)] >> s) & 1u; }
    bool frozen(int c) const { return popcount(root_[static_cast<std::size_t>(c)]) == 1; }

    void init(std::vector<int> start) {
        sym_ = std::move(start);
        state_.assign(m_.units.size(), {});
        violated_.clear();
        pos_.assign(m_.units.size(), -1);
        score_ = hard_viol_ = soft_obj_ = 0;
        for (std::size_t ui = 0; ui < m_.units.size(); ++ui) {
            const auto& u = m_.units[ui];
            if (u.kind == UnitKind::Count) {
                for (int c : u.cells) state_[ui].count += (u.mask >> sym_[static_cast<std::size_t>(c)]) & 1u;
            }
            refresh(static_cast<int>(ui), +1);
        }
    }

    struct UnitState {
        std::int64_t count = 0;
        std::int64_t dist = 0;
        bool viol = false;
    };

    std::int64_t contribution(const Unit& u, const UnitState& st) const {
        if (u.hard) return kHard * st.dist;
        return u.weight * (8 * (st.viol ? 1 : 0) + st.dist);
    }

    void evaluate(int ui) {
        const auto& u = m_.units[static_cast<std::size_t>(ui)];
        auto& st = state_[static_cast<std::size_t>(ui)];
        switch (u.kind) {
            case UnitKind::Pin:
                st.viol = !((u.mask >> sym_[static_cast<std::size_t>(u.cells[0])]) & 1u);
                st.dist = st.viol ? 1 : 0;
                break;
            case UnitKind::Count:
                st.dist = st.count < u.lo ? u.lo - st.count : (st.count > u.hi ? st.count - u.hi : 0);
                st.viol = st.dist > 0;
                break;
            case UnitKind::Window: {
                std::uint64_t code = 0;
                for (int c : u.cells) code = code * static_cast<std::uint64_t>(m_.S) + static_cast<std::uint64_t>(sym_[static_cast<std::size_t>(c)]);
                st.viol = !m_.tables[static_cast<std::size_t>(u.table)].contains(code);
                st.dist = st.viol ? 1 : 0;
                break;
            }
        }
    }

    // sign=-1 removes the unit's contribution, sign=+1 re-evaluates and adds it.
    void refresh(int ui, int sign) {
        const auto& u = m_.units[static_cast<std::size_t>(ui)];
        auto& st = state_[static_cast<std::size_t>(ui)];
        if (sign > 0) evaluate(ui);
        score_ += sign * contribution(u, st);
        if (st.viol) {
            if (u.hard) {
                hard_viol_ += sign;
            } else {
                soft_obj_ += sign * u.weight;
            }
        }
        if (sign > 0) {
            if (st.viol && pos_[static_cast<std::size_t>(ui)] < 0) {
                pos_[static_cast<std::size_t>(ui)] = static_cast<int>(violated_.size());
                violated_.push_back(ui);
            } else if (!st.viol && pos_[static_cast<std::size_t>(ui)] >= 0) {
                int p = pos_[static_cast<std::size_t>(ui)];
                int last = violated_.back();
                violated_[static_cast<std::size_t>(p)] = last;
                pos_[static_cast<std::size_t>(last)] = p;
                violated_.pop_back();
                pos_[static_cast<std::size_t>(ui)] = -1;
            }
        }
    }

    void set_cell(int c, int s) {
        int old = sym_[static_cast<std::size_t>(c)];
        if (old == s) return;
        const auto& watch = m_.watch_all[static_cast<std::size_t>(c)];
        for (int ui : watch) refresh(ui, -1);
        sym_[static_cast<std::size_t>(c)] = s;
        for (int ui : watch) {
            const auto& u = m_.units[static_cast<std::size_t>(ui)];
            if (u.kind == UnitKind::Count) {
                state_[static_cast<std::size_t>(ui)].count += static_cast<std::int64_t>((u.mask >> s) & 1u) - static_cast<std::int64_t>((u.mask >> old) & 1u);
            }
            refresh(ui, +1);
        }
    }

    void apply(const Move& mv) {
        for (int k = 0; k < mv.n; ++k) set_cell(mv.cell[static_cast<std::size_t>(k)], mv.to[static_cast<std::size_t>(k)]);
    }
    void undo(const Move& mv) {
        for (int k = mv.n - 1; k >= 0; --k) set_cell(mv.cell[static_cast<std::size_t>(k)], mv.from[static_cast<std::size_t>(k)]);
    }

    void add_change(int c, int s) {
        if (frozen(c) || !allowed(c, s) || sym_[static_cast<std::size_t>(c)] == s) return;
        Move mv;
        mv.n = 1;
        mv.cell[0] = c;
        mv.to[0] = s;
        mv.from[0] = sym_[static_cast<std::size_t>(c)];
        moves_.push_back(mv);
    }

    // Swap the rows of staff a and b over days [d0, d0+len).
    void add_swap(int a, int b, int d0, int len) {
        if (a == b || d0 < 0 || d0 + len > m_.D) return;
        Move mv;
        bool differs = false;
        for (int k = 0; k < len; ++k) {
            int ca = m_.cell(a, d0 + k), cb = m_.cell(b, d0 + k);
            int sa = sym_[static_cast<std::size_t>(ca)], sb = sym_[static_cast<std::size_t>(cb)];
            if (sa == sb) continue;
            if (frozen(ca) || frozen(cb) || !allowed(ca, sb) || !allowed(cb, sa)) return;
            differs = true;
            mv.cell[static_cast<std::size_t>(mv.n)] = ca;
            mv.to[static_cast<std::size_t>(mv.n)] = sb;
            mv.from[static_cast<std::size_t>(mv.n)] = sa;
            ++mv.n;
            mv.cell[static_cast<std::size_t>(mv.n)] = cb;
            mv.to[static_cast<std::size_t>(mv.n)] = sa;
            mv.from[static_cast<std::size_t>(mv.n)] = sb;
            ++mv.n;
        }
        if (differs) moves_.push_back(mv);
    }

    void moves_around(int c) {
        const int staff = c % m_.W, day = c / m_.W;
        for (int s = 0; s < m_.S; ++s) add_change(c, s);
        for (int k = 0; k < 3; ++k) add_swap(staff, static_cast<int>(rng_.below(static_cast<std::size_t>(m_.W))), day, 1);
        if (rng_.chance(30)) {
            int len = 2 + static_cast<int>(rng_.below(3));
            int start = day - static_cast<int>(rng_.below(static_cast<std::size_t>(len)));
            add_swap(staff, static_cast<int>(rng_.below(static_cast<std::size_t>(m_.W))), start, len);
        }
    }

    void gather(int target) {
        moves_.clear();
        int guard = 0;
        while (static_cast<int>(moves_.size()) < target && guard++ < target * 4) {
            int c;
            if (!violated_.empty() && rng_.chance(85)) {
                int ui = -1;
                if (hard_viol_ > 0) {
                    for (int tries = 0; tries < 8; ++tries) {
                        int cand = violated_[rng_.below(violated_.size())];
                        if (m_.units[static_cast<std::size_t>(cand)].hard) {
                            ui = cand;
                            break;
                        }
                    }
                }
                if (ui < 0) ui = violated_[rng_.below(violated_.size())];
                const auto& cells = m_.units[static_cast<std::size_t>(ui)].cells;
                c = cells[rng_.below(cells.size())];
            } else {
                c = static_cast<int>(rng_.below(static_cast<std::size_t>(m_.cells())));
            }
            moves_around(c);
        }
    }

    void perturb() {
        for (int k = 0; k < 8; ++k) {
            int c = static_cast<int>(rng_.below(static_cast<std::size_t>(m_.cells())));
            if (frozen(c)) continue;
            int s = static_cast<int>(rng_.below(static_cast<std::size_t>(m_.S)));
            if (allowed(c, s)) set_cell(c, s);
        }
    }

    const Model& m_;
    const Domains& root_;
    Rng& rng_;
    Clock& clock_;
    std::vector<int> sym_;
    std::vector<UnitState> state_;
    std::vector<int> violated_;
    std::vector<int> pos_;
    std::vector<Move> moves_;
    std::int64_t score_ = 0, hard_viol_ = 0, soft_obj_ = 0;
};

inline Roster decode(const ScheduleProblem& p, const Model& m, const std::vector<int>& sym) {
    std::vector<std::vector<ShiftSymbol>> rows(static_cast<std::size_t>(m.W));
    for (int i = 0; i < m.W; ++i) {
        for (int d = 0; d < m.D; ++d) rows[static_cast<std::size_t>(i)].push_back(p.shifts.symbols()[static_cast<std::size_t>(sym[static_cast<std::size_t>(m.cell(i, d))])]);
    }
    return Roster(p.month, p.staff, std::move(rows), m.D);
}

inline std::vector<int> fixed_symbols(const Domains& dom) {
    std::vector<int> out(dom.size());
    for (std::size_t c = 0; c < dom.size(); ++c) out[c] = dom[c] ? lowest(dom[c]) : 0;
    return out;
}

inline Schedule finish(const ScheduleProblem& p, const Model& m, const std::vector<int>& sym, SolveStatus status) {
    Schedule s;
    s.roster = decode(p, m, sym);
    auto tally = check_violations(*s.roster, p.constraints);
    if (tally.hard_violations != 0) {
        throw std::logic_error("solver produced a schedule with " + std::to_string(tally.hard_violations) +
                               " hard violations");
    }
    s.objective = tally.soft_objective;
    s.status = status;
    return s;
}

inline std::string describe(const Model& m, int unit) {
    return format_instance(*m.instances[static_cast<std::size_t>(m.units[static_cast<std::size_t>(unit)].instance)]);
}

// Root propagation plus exact search; std::nullopt when the exact search did
// not finish. Used for the deletion-filter explanation.
inline std::optional<bool> exactly_feasible(const ScheduleProblem& p, const CompiledSet& hard_only, Clock& clock) {
    Model m = build_model(p, hard_only);
    Domains dom(static_cast<std::size_t>(m.cells()), m.full);
    Propagator prop(m);
    if (prop.run_all(dom) >= 0) return false;
    ExactSearch ex(m, p.limits.exact_node_limit, clock);
    auto r = ex.run(dom);
    if (!r.complete && !r.best) return std::nullopt;
    return r.best.has_value();
}

inline std::string infeasible_core(const ScheduleProblem& p, Clock& clock) {
    std::vector<ConstraintInstance> core = p.constraints.hard;
    for (std::size_t i = 0; i < core.size();) {
        if (std::holds_alternative<AssignExactlyOne>(core[i].body)) {
            core.erase(core.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        auto trial = core;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        auto feasible = exactly_feasible(p, CompiledSet{trial, {}, {}}, clock);
        if (!feasible) return {};
        if (!*feasible) {
            core = std::move(trial);
        } else {
            ++i;
        }
    }
    std::vector<std::string> lines;
    for (const auto& c : core) lines.push_back(format_instance(c));
    return text::join(lines, "; ");
}

}  // namespace detail

inline Schedule solve(const ScheduleProblem& p) {
    if (p.time_budget_seconds <= 0) throw ConfigError("time budget must be positive");
    if (p.constraints.size() == 0) throw ConfigError("no constraints to solve");
    detail::Clock clock(p.time_budget_seconds);
    detail::Rng rng(p.seed);
    const detail::Model m = detail::build_model(p, p.constraints);
    detail::Domains root(static_cast<std::size_t>(m.cells()), m.full);
    detail::Propagator prop(m);
    if (int failed = prop.run_all(root); failed >= 0) {
        Schedule s;
        s.status = SolveStatus::Infeasible;
        s.explanation = "hard constraints conflict before search: " + detail::describe(m, failed);
        return s;
    }

    std::optional<std::vector<int>> incumbent;
    std::int64_t incumbent_obj = 0;

    if (static_cast<std::size_t>(m.cells()) <= p.limits.exact_cell_limit) {
        detail::ExactSearch exact(m, p.limits.exact_node_limit, clock);
        auto r = exact.run(root);
        if (r.complete) {
            if (!r.best) {
                Schedule s;
                s.status = SolveStatus::Infeasible;
                s.explanation = "no assignment satisfies the hard constraints (exhaustive search, " +
                                std::to_string(r.nodes) + " nodes)";
                if (static_cast<std::size_t>(m.cells()) <= p.limits.core_cell_limit) {
                    auto core = detail::infeasible_core(p, clock);
                    if (!core.empty()) s.explanation += "; conflicting set: " + core;
                }
                return s;
            }
            return detail::finish(p, m, detail::fixed_symbols(*r.best), SolveStatus::Optimal);
        }
        if (r.best) {
            incumbent = detail::fixed_symbols(*r.best);
            incumbent_obj = r.objective;
        }
    }

    std::vector<int> start;
    if (!incumbent) {
        detail::RandomizedSearch dfs(m, rng, clock);
        auto found = dfs.run(root, p.limits.dfs_node_limit, p.limits.dfs_restart_base);
        if (!found) found = detail::repair(m, root, dfs.best_partial(), p.limits, rng, clock);
        if (found) {
            incumbent = detail::fixed_symbols(*found);
            incumbent_obj = check_violations(detail::decode(p, m, *incumbent), p.constraints).soft_objective;
            start = *incumbent;
        } else {
            start = detail::fixed_symbols(dfs.best_partial());
        }
    } else {
        start = *incumbent;
    }

    if (!incumbent || incumbent_obj > 0) {
        detail::TabuSearch tabu(m, root, rng, clock);
        auto out = tabu.run(start, p.limits.tabu_iterations, p.limits.tabu_stall, p.limits.tabu_candidates);
        if (out.feasible && (!incumbent || out.objective < incumbent_obj)) {
            incumbent = out.feasible;
            incumbent_obj = out.objective;
        }
    }

    if (!incumbent) {
        Schedule s;
        s.status = SolveStatus::TimedOut;
        s.explanation = "search budget exhausted without a schedule satisfying every hard constraint";
        s.lower_bound = detail::soft_lower_bound(m, root);
        return s;
    }
    auto s = detail::finish(p, m, *incumbent, SolveStatus::Feasible);
    s.lower_bound = detail::soft_lower_bound(m, root);
    return s;
}

// Exhaustive enumeration in the same (day, staff, symbol) order as the exact
// search; the first optimum found wins ties.
inline Schedule brute_force_oracle(const ScheduleProblem& p) {
    const int W = static_cast<int>(p.staff.size());
    const int D = p.days();
    const int cells = W * D;
    if (cells > 20) throw ConfigError("oracle refuses " + std::to_string(cells) + " cells (limit 20)");
    const auto& syms = p.shifts.symbols();
    const int S = static_cast<int>(syms.size());
    std::vector<int> digit(static_cast<std::size_t>(cells), 0);
    std::optional<std::vector<int>> best;
    std::int64_t best_obj = 0;
    while (true) {
        std::vector<std::vector<ShiftSymbol>> rows(static_cast<std::size_t>(W));
        for (int i = 0; i < W; ++i) {
            for (int d = 0; d < D; ++d) rows[static_cast<std::size_t>(i)].push_back(syms[static_cast<std::size_t>(digit[static_cast<std::size_t>(d * W + i)])]);
        }
        auto tally = check_violations(Roster(p.month, p.staff, std::move(rows), D), p.constraints);
        if (tally.hard_violations == 0 && (!best || tally.soft_objective < best_obj)) {
            best = digit;
            best_obj = tally.soft_objective;
        }
        int k = cells - 1;
        while (k >= 0 && digit[static_cast<std::size_t>(k)] == S - 1) digit[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) break;
        ++digit[static_cast<std::size_t>(k)];
    }
    Schedule s;
    if (!best) {
        s.status = SolveStatus::Infeasible;
        s.explanation = "no assignment satisfies the hard constraints (enumerated all)";
        return s;
    }
    std::vector<std::vector<ShiftSymbol>> rows(static_cast<std::size_t>(W));
    for (int i = 0; i < W; ++i) {
        for (int d = 0; d < D; ++d) rows[static_cast<std::size_t>(i)].push_back(syms[static_cast<std::size_t>((*best)[static_cast<std::size_t>(d * W + i)])]);
    }
    s.roster = Roster(p.month, p.staff, std::move(rows), D);
    s.objective = best_obj;
    s.status = SolveStatus::Optimal;
    return s;
}

// Roster CSV followed by "# status=<s> objective=<n>".
inline std::string render_schedule(const Schedule& s) {
    std::string out = s.roster ? render_roster(*s.roster) : std::string();
    out += "# status=" + std::string(status_name(s.status)) + " objective=" + std::to_string(s.objective) + "\n";
    return out;
}

}  // namespace rosterlearn
