#pragma once

// Seeded synthetic corpus with known ground truth.
//
// 20 staff:
//   10001-10005  unit-1 nights, 5-day cycle 1N 1N - D -
//   10007-10011  unit-2 nights, same cycle on 2N
//   10006, 10012 part-timers, exactly 15 D per month (2 on / 2 off)
//   10013, 10014 their partners, D whenever the part-timer is off
//   10015-10020  full-time day staff on rotating weekly templates
// Every history day is staffed exactly at the weekday demand.
//
// Exception months carry one Mon-Sat block whose leave requests push the
// staffing margin under 1.25. Inside the block each unit-1 night worker does a
// night-then-day (1N 1N D) and five full-time staff work through their weekday
// off (a six-day D run). Each extra D is offset by a leave on someone else's D.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rosterlearn/evaluator.hpp"
#include "rosterlearn/mined_io.hpp"
#include "rosterlearn/roster.hpp"
#include "rosterlearn/solver.hpp"

namespace rosterlearn {

struct SyntheticSpec {
    MonthId start = MonthId(2021, 1);
    int months = 36;
    int exception_months = 7;
    int target_months = 12;
    int planted_patterns = 30;
    int n_min = 2;
    int n_max = 7;
    std::uint64_t seed = 7;
};

struct ExceptionCell {
    MonthId month;
    StaffId staff;
    int day = 0;
    std::string from;
    std::string to;
    bool cover = false;  // the leave that offsets an extra shift
};

struct PlantedException {
    MinedConstraint key;  // the T1 key the rule produces
    std::vector<MonthId> months;
};

struct Manifest {
    std::vector<MinedConstraint> planted_patterns;  // T1 keys present on full-margin days
    std::vector<PlantedException> exceptions;
    std::vector<ExceptionCell> exception_cells;
    std::map<MonthId, std::pair<int, int>> blocks;  // low-margin day range per exception month
    std::vector<MinedConstraint> t3_truth;         // min/max over exception-free months
    std::vector<MinedConstraint> t4_truth;
};

struct Corpus {
    std::vector<Roster> rosters;
    std::vector<RequestSet> requests;
    std::vector<Roster> target_reference;
    std::vector<RequestSet> target_requests;
    DemandTable demand;
    std::vector<ManualConstraint> manual;
    EvaluationConfig evaluation;
    Manifest manifest;
};

namespace detail {

struct Layout {
    std::vector<StaffId> unit1 = {"10001", "10002", "10003", "10004", "10005"};
    std::vector<StaffId> unit2 = {"10007", "10008", "10009", "10010", "10011"};
    std::vector<std::pair<StaffId, StaffId>> pairs = {{"10006", "10013"}, {"10012", "10014"}};
    std::vector<StaffId> fulltime = {"10015", "10016", "10017", "10018", "10019", "10020"};
    // Weekly off days of the full-time templates.
    std::vector<std::pair<Weekday, Weekday>> templates = {{Weekday::Sun, Weekday::Tue}, {Weekday::Sun, Weekday::Wed},
                                                          {Weekday::Sun, Weekday::Thu}, {Weekday::Sun, Weekday::Fri},
                                                          {Weekday::Sat, Weekday::Mon}, {Weekday::Sat, Weekday::Tue}};

    std::vector<StaffId> all() const {
        std::vector<StaffId> out;
        for (int i = 10001; i <= 10020; ++i) out.push_back(std::to_string(i));
        return out;
    }
};

using Grid = std::map<StaffId, std::vector<std::string>>;  // staff -> codes for days 1..L

inline Grid natural_month(MonthId month, int month_index, Rng& rng, const Layout& lay) {
    const int L = month.last_day();
    Grid g;
    static const std::array<std::string_view, 5> cycle = {"N", "N", "-", "D", "-"};
    for (int unit = 1; unit <= 2; ++unit) {
        const auto& members = unit == 1 ? lay.unit1 : lay.unit2;
        std::vector<int> phase = {0, 1, 2, 3, 4};
        for (int i = 4; i > 0; --i) std::swap(phase[static_cast<std::size_t>(i)], phase[rng.below(static_cast<std::size_t>(i + 1))]);
        for (std::size_t k = 0; k < members.size(); ++k) {
            auto& row = g[members[k]];
            for (int d = 1; d <= L; ++d) {
                auto c = cycle[static_cast<std::size_t>((phase[k] + d - 1) % 5)];
                row.push_back(c == "N" ? std::to_string(unit) + "N" : std::string(c));
            }
        }
    }
    for (const auto& [part, partner] : lay.pairs) {
        std::vector<int> good;
        for (int o = 0; o < 4; ++o) {
            int n = 0;
            for (int d = 1; d <= L; ++d) n += ((d - 1 + o) % 4) < 2 ? 1 : 0;
            if (n == 15) good.push_back(o);
        }
        int o = good.empty() ? static_cast<int>(rng.below(4)) : good[rng.below(good.size())];
        std::vector<bool> works(static_cast<std::size_t>(L));
        int n = 0;
        for (int d = 1; d <= L; ++d) n += (works[static_cast<std::size_t>(d - 1)] = ((d - 1 + o) % 4) < 2) ? 1 : 0;
        // Short months: extend one block to a three-day run.
        for (int d = 2; n < 15 && d <= L; ++d) {
            if (!works[static_cast<std::size_t>(d - 1)] && works[static_cast<std::size_t>(d - 2)] &&
                (d < 3 || works[static_cast<std::size_t>(d - 3)])) {
                works[static_cast<std::size_t>(d - 1)] = true;
                ++n;
            }
        }
        auto& a = g[part];
        auto& b = g[partner];
        for (int d = 1; d <= L; ++d) {
            bool w = works[static_cast<std::size_t>(d - 1)];
            a.push_back(w ? "D" : "-");
            b.push_back(w ? "-" : "D");
        }
    }
    for (std::size_t i = 0; i < lay.fulltime.size(); ++i) {
        const auto& t = lay.templates[(i + static_cast<std::size_t>(month_index)) % lay.templates.size()];
        auto& row = g[lay.fulltime[i]];
        for (int d = 1; d <= L; ++d) {
            Weekday w = month.weekday(d);
            row.push_back(w == t.first || w == t.second ? "-" : "D");
        }
    }
    return g;
}

inline Roster to_roster(MonthId month, const Grid& g, const Layout& lay) {
    std::vector<std::vector<ShiftSymbol>> rows;
    auto staff = lay.all();
    for (const auto& e : staff) {
        std::vector<ShiftSymbol> row;
        for (const auto& c : g.at(e)) row.push_back(ShiftSymbol::abstract(c));
        rows.push_back(std::move(row));
    }
    return Roster(month, staff, std::move(rows));
}

// Leave requests on Off cells, at most `per_day` per day and 3 per staff,
// plus a couple of D requests on D cells.
inline std::vector<Request> ordinary_requests(MonthId month, const Grid& g, Rng& rng, const Layout& lay,
                                              std::map<int, int>& leave_per_day, std::set<std::pair<StaffId, int>>& taken,
                                              int per_day = 3) {
    const int L = month.last_day();
    auto staff = lay.all();
    std::vector<Request> out;
    std::map<StaffId, int> per_staff;
    const int wanted = 18 + static_cast<int>(rng.below(10));
    for (int tries = 0; tries < 2000 && static_cast<int>(out.size()) < wanted; ++tries) {
        const auto& e = staff[rng.below(staff.size())];
        int d = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(L)));
        if (g.at(e)[static_cast<std::size_t>(d - 1)] != "-" || taken.count({e, d})) continue;
        if (leave_per_day[d] >= per_day || per_staff[e] >= 3) continue;
        taken.insert({e, d});
        ++leave_per_day[d];
        ++per_staff[e];
        out.push_back({e, d, ShiftSymbol::off()});
    }
    for (int k = 0, tries = 0; k < 2 && tries < 500; ++tries) {
        const auto& e = staff[rng.below(staff.size())];
        int d = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(L)));
        if (g.at(e)[static_cast<std::size_t>(d - 1)] != "D" || taken.count({e, d})) continue;
        taken.insert({e, d});
        out.push_back({e, d, ShiftSymbol::day()});
        ++k;
    }
    return out;
}

struct KeyCounts {
    std::int64_t total = 0;
    std::int64_t clean = 0;       // windows without a low-margin day
    std::int64_t exceptional = 0; // windows touching an exception cell
};

// T1/T2 window occurrence counts, split by whether the window is gated.
inline std::map<std::pair<std::string, AggregationKey>, KeyCounts> window_census(
    const std::vector<Roster>& rosters, const std::map<MonthId, std::pair<int, int>>& blocks,
    const std::set<std::tuple<MonthId, StaffId, int>>& exception_cells, int n_min, int n_max) {
    std::map<std::pair<std::string, AggregationKey>, KeyCounts> out;
    for (const auto& r : rosters) {
        auto b = blocks.find(r.month());
        for (std::size_t i = 0; i < r.staff().size(); ++i) {
            for (int n = n_min; n <= n_max; ++n) {
                for (int s = 1; s + n - 1 <= r.days(); ++s) {
                    std::vector<std::string> seq;
                    bool gated = false, touched = false;
                    for (int d = s; d < s + n; ++d) {
                        seq.push_back(r.at(i, d).code());
                        if (b != blocks.end() && d >= b->second.first && d <= b->second.second) gated = true;
                        if (exception_cells.count({r.month(), r.staff()[i], d})) touched = true;
                    }
                    AggregationKey specific{r.staff()[i], std::nullopt, seq};
                    AggregationKey general{std::nullopt, std::nullopt, seq};
                    for (auto* k : {&out[{"T1", specific}], &out[{"T2", general}]}) {
                        ++k->total;
                        if (!gated) ++k->clean;
                        if (touched) ++k->exceptional;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace detail

inline Corpus generate_corpus(const SyntheticSpec& spec) {
    if (spec.months < 1) throw ConfigError("synthetic corpus needs at least one month");
    if (spec.exception_months < 0 || spec.exception_months > spec.months) throw ConfigError("bad exception month count");
    detail::Layout lay;
    detail::Rng rng(spec.seed);
    Corpus corpus;

    const std::map<Weekday, int> day_demand = {{Weekday::Sun, 6}, {Weekday::Mon, 9}, {Weekday::Tue, 8}, {Weekday::Wed, 9},
                                               {Weekday::Thu, 9}, {Weekday::Fri, 9}, {Weekday::Sat, 8}};
    for (Weekday w : kAllWeekdays) {
        corpus.demand.set(w, "D", day_demand.at(w));
        corpus.demand.set(w, "1N", 2);
        corpus.demand.set(w, "2N", 2);
    }

    std::vector<MonthId> months;
    for (MonthId m = spec.start; static_cast<int>(months.size()) < spec.months; m = m.next()) months.push_back(m);

    // Exception months: not February, spread deterministically.
    std::vector<int> candidates;
    for (int i = 0; i < spec.months; ++i) {
        if (months[static_cast<std::size_t>(i)].month() != 2) candidates.push_back(i);
    }
    for (std::size_t i = candidates.size(); i > 1; --i) std::swap(candidates[i - 1], candidates[rng.below(i)]);
    std::set<int> exception_idx(candidates.begin(),
                                candidates.begin() + std::min<std::ptrdiff_t>(spec.exception_months, static_cast<std::ptrdiff_t>(candidates.size())));

    std::map<std::string, PlantedException> planted;
    for (const auto& s : lay.unit1) planted[s] = {MinedConstraint{"T1", 2, {s, std::nullopt, {"1N", "D"}}, std::nullopt}, {}};
    for (std::size_t i = 0; i + 1 < lay.fulltime.size(); ++i) {
        const auto& f = lay.fulltime[i];
        planted[f] = {MinedConstraint{"T1", 6, {f, std::nullopt, std::vector<std::string>(6, "D")}, std::nullopt}, {}};
    }

    for (int mi = 0; mi < spec.months; ++mi) {
        const MonthId month = months[static_cast<std::size_t>(mi)];
        const int L = month.last_day();
        auto g = detail::natural_month(month, mi, rng, lay);
        std::map<int, int> leave_per_day;
        std::set<std::pair<StaffId, int>> taken;
        std::vector<Request> reqs;

        if (exception_idx.count(mi)) {
            std::vector<int> mondays;
            for (int d = 2; d + 5 <= L; ++d) {
                if (month.weekday(d) == Weekday::Mon) mondays.push_back(d);
            }
            const int mon = mondays[rng.below(mondays.size())];
            const int sat = mon + 5;
            corpus.manifest.blocks[month] = {mon, sat};
            std::set<std::pair<StaffId, int>> changed;
            std::vector<int> extra_days;

            for (const auto& s : lay.unit1) {
                auto& row = g[s];
                for (int d = mon; d <= mon + 4; ++d) {
                    if (row[static_cast<std::size_t>(d - 1)] == "1N" && d >= 2 && row[static_cast<std::size_t>(d - 2)] == "1N") {
                        row[static_cast<std::size_t>(d)] = "D";
                        changed.insert({s, d + 1});
                        extra_days.push_back(d + 1);
                        corpus.manifest.exception_cells.push_back({month, s, d + 1, "-", "D", false});
                        planted[s].months.push_back(month);
                        break;
                    }
                }
            }
            for (std::size_t i = 0; i + 1 < lay.fulltime.size(); ++i) {
                const auto& f = lay.fulltime[i];
                auto& row = g[f];
                for (int d = mon; d <= mon + 4; ++d) {
                    if (row[static_cast<std::size_t>(d - 1)] == "-") {
                        row[static_cast<std::size_t>(d - 1)] = "D";
                        changed.insert({f, d});
                        extra_days.push_back(d);
                        corpus.manifest.exception_cells.push_back({month, f, d, "-", "D", false});
                        planted[f].months.push_back(month);
                        break;
                    }
                }
            }
            // Offsetting leaves on D cells of staff outside the planted rules.
            std::vector<StaffId> pool = lay.unit2;
            pool.push_back("10020");
            pool.push_back("10013");
            pool.push_back("10014");
            for (const auto& s : lay.unit1) pool.push_back(s);
            for (int d : extra_days) {
                std::vector<StaffId> options;
                for (const auto& c : pool) {
                    if (g[c][static_cast<std::size_t>(d - 1)] == "D" && !changed.count({c, d})) options.push_back(c);
                }
                if (options.empty()) throw std::logic_error("synthetic generator found no cover on " + month.to_string());
                const auto& c = options[rng.below(options.size())];
                g[c][static_cast<std::size_t>(d - 1)] = "-";
                changed.insert({c, d});
                taken.insert({c, d});
                ++leave_per_day[d];
                reqs.push_back({c, d, ShiftSymbol::off()});
                corpus.manifest.exception_cells.push_back({month, c, d, "D", "-", true});
            }
            // Push every block day under the margin threshold.
            const auto headcount = static_cast<std::int64_t>(lay.all().size());
            for (int d = mon; d <= sat; ++d) {
                const std::int64_t required = corpus.demand.total(month.weekday(d));
                int need = 0;
                while (Rational(headcount - need, required) >= Rational(5, 4)) ++need;
                auto staff = lay.all();
                for (std::size_t i = staff.size(); i > 1; --i) std::swap(staff[i - 1], staff[rng.below(i)]);
                for (const auto& e : staff) {
                    if (leave_per_day[d] >= need) break;
                    if (g[e][static_cast<std::size_t>(d - 1)] != "-" || taken.count({e, d}) || changed.count({e, d})) continue;
                    taken.insert({e, d});
                    ++leave_per_day[d];
                    reqs.push_back({e, d, ShiftSymbol::off()});
                }
                if (leave_per_day[d] < need) throw std::logic_error("synthetic generator cannot gate " + month.to_string());
            }
            // Keep ordinary requests off the block.
            for (int d = mon; d <= sat; ++d) leave_per_day[d] = 99;
            auto more = detail::ordinary_requests(month, g, rng, lay, leave_per_day, taken);
            reqs.insert(reqs.end(), more.begin(), more.end());
        } else {
            reqs = detail::ordinary_requests(month, g, rng, lay, leave_per_day, taken);
        }
        corpus.rosters.push_back(detail::to_roster(month, g, lay));
        corpus.requests.push_back(RequestSet(month, std::move(reqs)));
    }

    MonthId next = months.back().next();
    for (int t = 0; t < spec.target_months; ++t, next = next.next()) {
        auto g = detail::natural_month(next, spec.months + t, rng, lay);
        std::map<int, int> leave_per_day;
        std::set<std::pair<StaffId, int>> taken;
        auto reqs = detail::ordinary_requests(next, g, rng, lay, leave_per_day, taken);
        corpus.target_reference.push_back(detail::to_roster(next, g, lay));
        corpus.target_requests.push_back(RequestSet(next, std::move(reqs)));
    }

    for (auto& [staff, p] : planted) {
        if (!p.months.empty()) corpus.manifest.exceptions.push_back(p);
    }

    // Ground truth derived from exception-free months.
    std::vector<const Roster*> clean;
    for (const auto& r : corpus.rosters) {
        if (!corpus.manifest.blocks.count(r.month())) clean.push_back(&r);
    }
    const std::vector<std::string> working = {"D", "1N", "2N"};
    std::map<StaffId, std::pair<int, int>> workdays;
    std::map<StaffId, std::set<std::string>> feasible;
    for (const auto& e : lay.all()) {
        for (const auto& code : std::vector<std::string>{"-", "D", "1N", "2N"}) {
            std::int64_t lo = 1 << 20, hi = -1;
            for (const auto* r : clean) {
                auto row = *r->index_of(e);
                std::int64_t n = 0;
                for (int d = 1; d <= r->days(); ++d) n += r->at(row, d).code() == code ? 1 : 0;
                lo = std::min(lo, n);
                hi = std::max(hi, n);
            }
            if (hi > 0 && code != "-") feasible[e].insert(code);
            MinedConstraint c{"T3", kMonthDuration, {e, std::nullopt, {code}}, std::make_pair(lo, hi)};
            if (hi >= 0) corpus.manifest.t3_truth.push_back(c);
        }
        int lo = 1 << 20, hi = -1;
        for (const auto* r : clean) {
            auto row = *r->index_of(e);
            int n = 0;
            for (int d = 1; d <= r->days(); ++d) n += r->at(row, d).is_off() ? 0 : 1;
            lo = std::min(lo, n);
            hi = std::max(hi, n);
        }
        workdays[e] = {lo, hi};
    }
    std::sort(corpus.manifest.t3_truth.begin(), corpus.manifest.t3_truth.end());
    for (const auto& [key, need] : corpus.demand.rows()) {
        corpus.manifest.t4_truth.push_back(
            MinedConstraint{"T4", 1, {std::nullopt, key.first, {key.second}}, std::make_pair<std::int64_t, std::int64_t>(need, need)});
    }

    // Planted patterns: the rarest T1 keys that still clear the frequency
    // threshold on full-margin windows alone.
    std::set<std::tuple<MonthId, StaffId, int>> cells;
    for (const auto& c : corpus.manifest.exception_cells) cells.insert({c.month, c.staff, c.day});
    auto census = detail::window_census(corpus.rosters, corpus.manifest.blocks, cells, spec.n_min, spec.n_max);
    const std::int64_t threshold = (spec.months * 15 + 99) / 100;
    std::vector<std::pair<std::int64_t, MinedConstraint>> natural;
    for (const auto& [k, counts] : census) {
        if (k.first != "T1" || counts.clean < threshold) continue;
        natural.push_back({counts.clean, MinedConstraint{"T1", static_cast<int>(k.second.shifts.size()), k.second, std::nullopt}});
    }
    std::sort(natural.begin(), natural.end());
    for (int i = 0; i < spec.planted_patterns && i < static_cast<int>(natural.size()); ++i) {
        corpus.manifest.planted_patterns.push_back(natural[static_cast<std::size_t>(i)].second);
    }

    // Hand-written rules a scheduler would state up front: working-day ranges
    // and night shifts in same-unit pairs (no isolated or tripled night).
    for (const auto& [e, r] : workdays) {
        corpus.manual.push_back({true, 1, MinedConstraint{"T3", kMonthDuration, {e, std::nullopt, {"*"}}, std::make_pair<std::int64_t, std::int64_t>(r.first, r.second)}});
    }
    const std::vector<std::string> codes = {"-", "D", "1N", "2N"};
    for (const auto& a : codes) {
        for (const auto& b : codes) {
            for (const auto& c : codes) {
                bool night = ShiftSymbol::abstract(b).is_night();
                bool isolated = night && a != b && c != b;
                bool triple = night && a == b && c == b;
                if (isolated || triple) continue;
                corpus.manual.push_back({true, 1, MinedConstraint{"T2", 3, {std::nullopt, std::nullopt, {a, b, c}}, std::nullopt}});
            }
        }
    }

    corpus.evaluation.working_days = workdays;
    corpus.evaluation.feasible_shifts = feasible;
    corpus.evaluation.shift_hours = std::map<std::string, int>{{"D", 8}, {"1N", 8}, {"2N", 8}};
    corpus.evaluation.hour_limits.emplace();
    for (const auto& [e, r] : workdays) (*corpus.evaluation.hour_limits)[e] = 8 * r.second;
    corpus.evaluation.demand = corpus.demand;
    corpus.evaluation.consecutive_day_limit = 4;
    return corpus;
}

inline std::string render_manifest(const Manifest& m) {
    std::string out = "[planted_patterns]\n";
    for (const auto& c : m.planted_patterns) out += format_mined(c) + "\n";
    out += "[exceptions]\n";
    for (const auto& e : m.exceptions) {
        std::vector<std::string> months;
        for (const auto& mo : e.months) months.push_back(mo.to_string());
        out += format_mined(e.key) + " months=" + text::join(months, " ") + "\n";
    }
    out += "[blocks]\n";
    for (const auto& [mo, b] : m.blocks) out += mo.to_string() + "," + std::to_string(b.first) + "," + std::to_string(b.second) + "\n";
    out += "[exception_cells]\n";
    for (const auto& c : m.exception_cells) {
        out += c.month.to_string() + "," + c.staff + "," + std::to_string(c.day) + "," + c.from + "," + c.to +
               (c.cover ? ",cover" : ",exception") + "\n";
    }
    out += "[t3]\n";
    for (const auto& c : m.t3_truth) out += format_mined(c) + "\n";
    out += "[t4]\n";
    for (const auto& c : m.t4_truth) out += format_mined(c) + "\n";
    return out;
}

}  // namespace rosterlearn
