#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rosterlearn/rational.hpp"
#include "rosterlearn/roster.hpp"

namespace rosterlearn {

struct DayMargin {
    int available = 0;  // a_d
    int required = 0;   // r_d
    Rational margin;    // u_d = a_d / r_d
};

class MarginProfile {
public:
    MarginProfile() = default;
    MarginProfile(MonthId month, std::vector<DayMargin> days) : month_(month), days_(std::move(days)) {}

    MonthId month() const noexcept { return month_; }
    const std::vector<DayMargin>& days() const noexcept { return days_; }
    const DayMargin& day(int d) const { return days_.at(static_cast<std::size_t>(d - 1)); }

    Rational min_margin(int first, int last) const {
        Rational m = day(first).margin;
        for (int d = first + 1; d <= last; ++d) m = std::min(m, day(d).margin);
        return m;
    }

    // The window gate: every day of [first, last] has u_d >= threshold.
    bool passes(int first, int last, const Rational& threshold) const {
        for (int d = first; d <= last; ++d) {
            if (day(d).margin < threshold) return false;
        }
        return true;
    }

private:
    MonthId month_;
    std::vector<DayMargin> days_;
};

// a_d counts the given staff minus their leave requests on d; r_d is the sum of
// the demand rows for d's weekday.
inline MarginProfile staffing_margin(MonthId month, const RequestSet& requests, const DemandTable& demand,
                                     const std::vector<StaffId>& staff) {
    std::vector<DayMargin> days;
    for (int d = 1; d <= month.last_day(); ++d) {
        int leave = 0;
        for (const auto& r : requests.entries()) {
            if (r.day == d && r.is_leave() && std::find(staff.begin(), staff.end(), r.staff) != staff.end()) ++leave;
        }
        DayMargin m;
        m.available = static_cast<int>(staff.size()) - leave;
        m.required = demand.total(month.weekday(d));
        if (m.required <= 0) {
            throw ConfigError("no staffing requirement for " + std::string(weekday_token(month.weekday(d))) + " (" +
                              month.to_string() + " day " + std::to_string(d) + "); margin undefined");
        }
        m.margin = Rational(m.available, m.required);
        days.push_back(m);
    }
    return MarginProfile(month, std::move(days));
}

struct FlexibilityScore {
    StaffId staff;
    MonthId month;
    int requested = 0;              // N_r
    int assigned = 0;               // N_a
    std::optional<Rational> score;  // empty: never assigned that month

    bool never_assigned() const { return !score.has_value(); }
};

inline FlexibilityScore flexibility(const StaffId& staff, MonthId month, const RequestSet& requests, const Roster& roster) {
    auto idx = roster.index_of(staff);
    if (!idx) throw DataError("staff " + staff + " not in roster for " + month.to_string());
    FlexibilityScore f;
    f.staff = staff;
    f.month = month;
    f.requested = requests.leave_count(staff);
    for (int d = 1; d <= roster.days(); ++d) f.assigned += roster.at(*idx, d).is_off() ? 0 : 1;
    if (f.assigned > 0) f.score = Rational(1) - Rational(f.requested, f.assigned);
    return f;
}

// Staff whose flexibility reaches the threshold. Never-assigned staff are
// always dropped.
inline std::vector<StaffId> eligibles(const std::vector<StaffId>& staff, MonthId month, const RequestSet& requests,
                                      const Roster& roster, const Rational& min_flexibility) {
    std::vector<StaffId> out;
    for (const auto& e : staff) {
        auto f = flexibility(e, month, requests, roster);
        if (f.score && *f.score >= min_flexibility) out.push_back(e);
    }
    return out;
}

// Fallback requirement when no demand table is configured: for every
// (weekday, working shift) the smallest headcount seen on that weekday in the
// historical rosters.
inline DemandTable bootstrap_demand(const std::vector<Roster>& history) {
    if (history.empty()) throw ConfigError("no demand file and no historical rosters to bootstrap requirements from");
    std::map<std::pair<Weekday, std::string>, int> mins;
    std::set<std::string> shifts;
    for (const auto& r : history) {
        for (std::size_t i = 0; i < r.staff().size(); ++i) {
            for (const auto& s : r.row(i)) {
                if (!s.is_off()) shifts.insert(s.code());
            }
        }
    }
    std::set<Weekday> seen_weekdays;
    for (const auto& r : history) {
        for (int d = 1; d <= r.days(); ++d) {
            Weekday w = r.month().weekday(d);
            seen_weekdays.insert(w);
            for (const auto& code : shifts) {
                int h = 0;
                for (std::size_t i = 0; i < r.staff().size(); ++i) h += r.at(i, d).code() == code ? 1 : 0;
                auto key = std::make_pair(w, code);
                auto it = mins.find(key);
                if (it == mins.end()) {
                    mins[key] = h;
                } else {
                    it->second = std::min(it->second, h);
                }
            }
        }
    }
    DemandTable table;
    for (const auto& [key, count] : mins) table.set(key.first, key.second, count);
    return table;
}

// CSV audit line per day: day,available,required,margin,gated
inline std::string render_margin_report(const MarginProfile& profile, const Rational& threshold) {
    std::string out = "day,available,required,margin,gated\n";
    for (int d = 1; d <= static_cast<int>(profile.days().size()); ++d) {
        const auto& m = profile.day(d);
        out += std::to_string(d) + "," + std::to_string(m.available) + "," + std::to_string(m.required) + "," +
               format_rational(m.margin) + "," + (m.margin < threshold ? "yes" : "no") + "\n";
    }
    return out;
}

}  // namespace rosterlearn
