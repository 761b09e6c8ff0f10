#pragma once

// Scores a schedule against the fixed catalogue H1..H5 / S1..S6, without
// looking at any mined constraint.

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosterlearn/roster.hpp"
#include "rosterlearn/solver.hpp"

namespace rosterlearn {

inline constexpr std::array<std::string_view, 11> kViolationClasses = {"H1", "H2", "H3", "H4", "H5", "S1",
                                                                         "S2", "S3", "S4", "S5", "S6"};

struct EvaluationConfig {
    std::optional<std::map<StaffId, std::pair<int, int>>> working_days;        // H1
    std::optional<std::map<StaffId, std::set<std::string>>> feasible_shifts;  // H2, S4 population
    std::optional<std::map<std::string, int>> shift_hours;                    // H3
    std::optional<std::map<StaffId, int>> hour_limits;                        // H3
    std::optional<DemandTable> demand;                                        // H4
    std::optional<RequestSet> requests;                                       // S6
    int consecutive_day_limit = 4;                                            // S5
};

struct ViolationReport {
    std::string schedule_id;
    MonthId month;
    bool feasible = false;  // the schedule was labelled Optimal/Feasible
    std::map<std::string, std::int64_t> counts;
    std::map<StaffId, std::map<std::string, std::int64_t>> per_staff;
    std::string trace;

    std::int64_t operator[](std::string_view cls) const {
        auto it = counts.find(std::string(cls));
        return it == counts.end() ? 0 : it->second;
    }
    std::int64_t hard_total() const { return (*this)["H1"] + (*this)["H2"] + (*this)["H3"] + (*this)["H4"] + (*this)["H5"]; }
};

namespace detail {

struct Run {
    int first;  // 1-based
    int last;
    std::string code;
};

// Maximal runs of identical night codes in one row.
inline std::vector<Run> night_runs(const Roster& r, std::size_t row) {
    std::vector<Run> out;
    for (int d = 1; d <= r.days(); ++d) {
        const auto& s = r.at(row, d);
        if (!s.is_night()) continue;
        if (!out.empty() && out.back().last == d - 1 && out.back().code == s.code()) {
            out.back().last = d;
        } else {
            out.push_back({d, d, s.code()});
        }
    }
    return out;
}

}  // namespace detail

inline ViolationReport evaluate(const Roster& roster, const EvaluationConfig& cfg, std::string schedule_id = {},
                                bool labelled_feasible = true, std::string trace = {}) {
    auto need = [](bool present, const char* cls, const char* section) {
        if (!present) throw ConfigError(std::string("evaluation config lacks ") + section + "; cannot score " + cls);
    };
    need(cfg.working_days.has_value(), "H1", "working-day ranges");
    need(cfg.feasible_shifts.has_value(), "H2", "feasible shift sets");
    need(cfg.shift_hours.has_value() && cfg.hour_limits.has_value(), "H3", "shift hours and hour limits");
    need(cfg.demand.has_value(), "H4", "a demand table");
    need(cfg.requests.has_value(), "S6", "a request set");
    if (cfg.consecutive_day_limit < 1) throw ConfigError("S5 consecutive-day limit must be positive");

    ViolationReport rep;
    rep.schedule_id = std::move(schedule_id);
    rep.month = roster.month();
    rep.feasible = labelled_feasible;
    rep.trace = std::move(trace);
    for (auto cls : kViolationClasses) rep.counts[std::string(cls)] = 0;
    auto hit = [&](const char* cls, const StaffId* staff, std::int64_t n = 1) {
        if (n == 0) return;
        rep.counts[cls] += n;
        if (staff) rep.per_staff[*staff][cls] += n;
    };

    const int L = roster.days();
    std::map<StaffId, std::int64_t> nights;
    for (std::size_t i = 0; i < roster.staff().size(); ++i) {
        const StaffId& e = roster.staff()[i];
        int working = 0, hours = 0;
        std::int64_t night_cells = 0;
        for (int d = 1; d <= L; ++d) {
            const auto& s = roster.at(i, d);
            if (s.is_off()) continue;
            ++working;
            auto h = cfg.shift_hours->find(s.code());
            hours += h == cfg.shift_hours->end() ? 0 : h->second;
            if (s.is_night()) ++night_cells;
            auto fs = cfg.feasible_shifts->find(e);
            if (fs != cfg.feasible_shifts->end() && !fs->second.count(s.code())) hit("H2", &e);
        }
        if (auto wd = cfg.working_days->find(e); wd != cfg.working_days->end()) {
            if (working < wd->second.first || working > wd->second.second) hit("H1", &e);
        }
        if (auto hl = cfg.hour_limits->find(e); hl != cfg.hour_limits->end()) {
            if (hours > hl->second) hit("H3", &e);
        }

        for (const auto& run : detail::night_runs(roster, i)) {
            int len = run.last - run.first + 1;
            bool truncated = run.first == 1 || run.last == L;
            if (len % 2 == 1 && !truncated) hit("H5", &e);
            if (run.last < L) {
                const auto& next = roster.at(i, run.last + 1);
                if (!next.is_off()) {
                    hit("S1", &e);
                    bool fallback = next.kind() == ShiftKind::Day && (run.last + 2 > L || roster.at(i, run.last + 2).is_off());
                    if (!fallback) hit("S2", &e);
                }
            }
        }
        for (int d = 1; d + 2 <= L; ++d) {
            if (roster.at(i, d).is_night() && roster.at(i, d + 1).is_off() && roster.at(i, d + 2).is_night()) hit("S3", &e);
        }
        int run = 0;
        std::int64_t excess = 0;
        for (int d = 1; d <= L + 1; ++d) {
            if (d <= L && roster.at(i, d).kind() == ShiftKind::Day) {
                ++run;
                continue;
            }
            excess += std::max(0, run - cfg.consecutive_day_limit);
            run = 0;
        }
        hit("S5", &e, excess);

        bool night_capable = night_cells > 0;
        if (auto fs = cfg.feasible_shifts->find(e); fs != cfg.feasible_shifts->end()) {
            night_capable = std::any_of(fs->second.begin(), fs->second.end(),
                                        [](const std::string& c) { return ShiftSymbol::abstract(c).is_night(); });
        }
        if (night_capable) nights[e] = night_cells;
    }

    if (!nights.empty()) {
        auto [mn, mx] = std::minmax_element(nights.begin(), nights.end(),
                                            [](const auto& a, const auto& b) { return a.second < b.second; });
        rep.counts["S4"] = mx->second - mn->second;
    }

    for (int d = 1; d <= L; ++d) {
        Weekday w = roster.month().weekday(d);
        for (const auto& [key, required] : cfg.demand->rows()) {
            if (key.first != w) continue;
            int h = 0;
            for (std::size_t i = 0; i < roster.staff().size(); ++i) h += roster.at(i, d).code() == key.second ? 1 : 0;
            if (h < required) hit("H4", nullptr);
        }
    }

    for (const auto& r : cfg.requests->entries()) {
        if (r.day > L) continue;
        auto row = roster.index_of(r.staff);
        if (!row) continue;
        if (roster.at(*row, r.day).code() != r.symbol.code()) hit("S6", &r.staff);
    }
    return rep;
}

struct ComparisonRow {
    std::string cls;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t delta = 0;  // a - b
    bool a_lower = false;
};

inline std::vector<ComparisonRow> compare_runs(const ViolationReport& a, const ViolationReport& b) {
    if (a.month != b.month) {
        throw DataError("cannot compare reports for " + a.month.to_string() + " and " + b.month.to_string());
    }
    std::vector<ComparisonRow> rows;
    for (auto cls : kViolationClasses) {
        ComparisonRow r{std::string(cls), a[cls], b[cls], a[cls] - b[cls], a[cls] < b[cls]};
        if (cls.front() == 'H' && a.feasible && b.feasible && r.delta != 0) {
            throw std::logic_error("hard class " + r.cls + " differs between two feasible schedules");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::string render_report_csv(const ViolationReport& rep) {
    std::string out = "# " + rep.trace + "\nclass,count\n";
    for (auto cls : kViolationClasses) out += std::string(cls) + "," + std::to_string(rep[cls]) + "\n";
    return out;
}

inline std::string render_report_table(const ViolationReport& rep) {
    std::ostringstream out;
    out << "schedule " << (rep.schedule_id.empty() ? "-" : rep.schedule_id) << " (" << rep.month.to_string() << ")\n";
    if (!rep.trace.empty()) out << rep.trace << "\n";
    for (auto cls : kViolationClasses) {
        out << "  " << cls << (cls == "S4" ? " spread " : " ") << rep[cls] << "\n";
    }
    return out.str();
}

// class,with,without
inline std::string render_comparison(const std::vector<ComparisonRow>& rows) {
    std::string out = "class,a,b,delta,a_lower\n";
    for (const auto& r : rows) {
        out += r.cls + "," + std::to_string(r.a) + "," + std::to_string(r.b) + "," + std::to_string(r.delta) + "," +
               (r.a_lower ? "yes" : "no") + "\n";
    }
    return out;
}

// Evaluation config lines:
//   working_days,<staff>,<min>,<max>
//   feasible,<staff>,<code> <code> ...
//   hours,<code>,<hours>
//   hour_limit,<staff>,<hours>
//   s5_limit,<n>
// Demand and requests come from their own files.
inline EvaluationConfig parse_evaluation_config(std::istream& in) {
    EvaluationConfig cfg;
    cfg.working_days.emplace();
    cfg.feasible_shifts.emplace();
    cfg.shift_hours.emplace();
    cfg.hour_limits.emplace();
    for (const auto& line : text::content_lines(in)) {
        auto f = text::split(line.text);
        auto num = [&](std::size_t i) {
            auto v = i < f.size() ? text::to_int(f[i]) : std::nullopt;
            if (!v) throw ParseError("expected an integer", line.row, i + 1);
            return static_cast<int>(*v);
        };
        if (f[0] == "working_days" && f.size() == 4) {
            (*cfg.working_days)[f[1]] = {num(2), num(3)};
        } else if (f[0] == "feasible" && f.size() == 3) {
            std::istringstream codes(f[2]);
            std::set<std::string> set;
            for (std::string c; codes >> c;) set.insert(c);
            (*cfg.feasible_shifts)[f[1]] = std::move(set);
        } else if (f[0] == "hours" && f.size() == 3) {
            (*cfg.shift_hours)[f[1]] = num(2);
        } else if (f[0] == "hour_limit" && f.size() == 3) {
            (*cfg.hour_limits)[f[1]] = num(2);
        } else if (f[0] == "s5_limit" && f.size() == 2) {
            cfg.consecutive_day_limit = num(1);
        } else {
            throw ParseError("unrecognised evaluation line '" + line.text + "'", line.row, 1);
        }
    }
    return cfg;
}

inline EvaluationConfig parse_evaluation_config(const std::string& content) {
    std::istringstream in(content);
    return parse_evaluation_config(in);
}

inline std::string render_evaluation_config(const EvaluationConfig& cfg) {
    std::string out;
    if (cfg.working_days) {
        for (const auto& [e, r] : *cfg.working_days) out += "working_days," + e + "," + std::to_string(r.first) + "," + std::to_string(r.second) + "\n";
    }
    if (cfg.feasible_shifts) {
        for (const auto& [e, s] : *cfg.feasible_shifts) out += "feasible," + e + "," + text::join({s.begin(), s.end()}, " ") + "\n";
    }
    if (cfg.shift_hours) {
        for (const auto& [c, h] : *cfg.shift_hours) out += "hours," + c + "," + std::to_string(h) + "\n";
    }
    if (cfg.hour_limits) {
        for (const auto& [e, h] : *cfg.hour_limits) out += "hour_limit," + e + "," + std::to_string(h) + "\n";
    }
    out += "s5_limit," + std::to_string(cfg.consecutive_day_limit) + "\n";
    return out;
}

}  // namespace rosterlearn
