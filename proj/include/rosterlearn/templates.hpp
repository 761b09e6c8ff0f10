#pragma once

// Constraint templates and the window-scan extraction pipeline:
// build_templates -> (per template, per month) collect over every gated window
// -> reduce_month -> reduce_final.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "rosterlearn/exception_filter.hpp"
#include "rosterlearn/rational.hpp"
#include "rosterlearn/roster.hpp"

namespace rosterlearn {

// Duration sentinel for templates spanning the whole month.
inline constexpr int kMonthDuration = 0;

enum class StaffScope { One, All };
enum class Generality { Specific, General };
enum class Normalization { Unit, Weekday };

struct PatternExtraction {
    friend bool operator==(const PatternExtraction&, const PatternExtraction&) = default;
};

struct CountExtraction {
    std::optional<std::string> target;  // empty: ANY shift
    Normalization normalization = Normalization::Unit;
    friend bool operator==(const CountExtraction&, const CountExtraction&) = default;
};

using Extraction = std::variant<PatternExtraction, CountExtraction>;

struct ConstraintTemplate {
    std::string id;  // T1..T4
    int duration = 1;
    StaffScope scope = StaffScope::One;
    Extraction extraction;
    Generality generality = Generality::Specific;

    bool spans_month() const { return duration == kMonthDuration; }
    bool is_pattern() const { return std::holds_alternative<PatternExtraction>(extraction); }
    const CountExtraction* count() const { return std::get_if<CountExtraction>(&extraction); }

    friend bool operator==(const ConstraintTemplate&, const ConstraintTemplate&) = default;
};

inline ConstraintTemplate pattern_template(int n, Generality g) {
    return {g == Generality::Specific ? "T1" : "T2", n, StaffScope::One, PatternExtraction{}, g};
}

inline ConstraintTemplate monthly_count_template() {
    return {"T3", kMonthDuration, StaffScope::One, CountExtraction{std::nullopt, Normalization::Unit},
            Generality::Specific};
}

inline ConstraintTemplate weekday_demand_template(const std::string& shift) {
    return {"T4", 1, StaffScope::All, CountExtraction{shift, Normalization::Weekday}, Generality::General};
}

// T1/T2 for every length in [n_min, n_max], one T3, one T4 per working shift.
inline std::vector<ConstraintTemplate> build_templates(int n_min, int n_max, const std::vector<ShiftSymbol>& shifts) {
    if (n_min < 2) throw ConfigError("minimum pattern length must be at least 2, got " + std::to_string(n_min));
    if (n_min > n_max) {
        throw ConfigError("pattern length range is empty: " + std::to_string(n_min) + " > " + std::to_string(n_max));
    }
    std::vector<ConstraintTemplate> out;
    for (int n = n_min; n <= n_max; ++n) {
        out.push_back(pattern_template(n, Generality::Specific));
        out.push_back(pattern_template(n, Generality::General));
    }
    out.push_back(monthly_count_template());
    for (const auto& s : shifts) {
        if (!s.is_off()) out.push_back(weekday_demand_template(s.code()));
    }
    return out;
}

// Identity an observation is aggregated under. Never carries the month or
// the window position.
struct AggregationKey {
    std::optional<StaffId> staff;      // Specific templates only
    std::optional<Weekday> weekday;    // T4 only
    std::vector<std::string> shifts;   // pattern sequence, or the single counted shift

    friend auto operator<=>(const AggregationKey&, const AggregationKey&) = default;
    friend bool operator==(const AggregationKey&, const AggregationKey&) = default;
};

inline AggregationKey compose_key(Generality g, const std::optional<StaffId>& staff, std::optional<Weekday> weekday,
                                  std::vector<std::string> payload) {
    AggregationKey k;
    if (g == Generality::Specific) k.staff = staff;
    k.weekday = weekday;
    k.shifts = std::move(payload);
    return k;
}

// Multiset of (key, weight) observations.
class ObservationMultiset {
public:
    void add(const AggregationKey& key, const Rational& weight, std::int64_t times = 1) {
        if (times <= 0) return;
        entries_[{key, weight}] += times;
    }

    ObservationMultiset& operator+=(const ObservationMultiset& other) {
        for (const auto& [kw, mult] : other.entries_) entries_[kw] += mult;
        return *this;
    }

    std::int64_t multiplicity(const AggregationKey& key, const Rational& weight) const {
        auto it = entries_.find({key, weight});
        return it == entries_.end() ? 0 : it->second;
    }

    std::set<AggregationKey> keys() const {
        std::set<AggregationKey> out;
        for (const auto& [kw, mult] : entries_) out.insert(kw.first);
        return out;
    }

    bool empty() const noexcept { return entries_.empty(); }
    std::size_t distinct() const noexcept { return entries_.size(); }
    const std::map<std::pair<AggregationKey, Rational>, std::int64_t>& entries() const noexcept { return entries_; }

    friend bool operator==(const ObservationMultiset&, const ObservationMultiset&) = default;

private:
    std::map<std::pair<AggregationKey, Rational>, std::int64_t> entries_;
};

// Per-key monthly totals accumulated over the processed months.
struct MonthlySummary {
    std::map<AggregationKey, std::vector<Rational>> totals;
    int months_seen = 0;

    friend bool operator==(const MonthlySummary&, const MonthlySummary&) = default;
};

struct MinedConstraint {
    std::string template_id;
    int duration = 0;
    AggregationKey key;
    std::optional<std::pair<std::int64_t, std::int64_t>> bounds;  // Count constraints only
    int period_last_day = 31;  // printed in the T3 line form

    bool is_pattern() const { return !bounds.has_value(); }
    std::int64_t lower() const { return bounds.value().first; }
    std::int64_t upper() const { return bounds.value().second; }

    // Identity used for set comparisons: template + key, bounds excluded.
    std::tuple<std::string, int, AggregationKey> identity() const { return {template_id, duration, key}; }

    friend bool operator==(const MinedConstraint& a, const MinedConstraint& b) {
        return a.identity() == b.identity() && a.bounds == b.bounds;
    }
    friend bool operator<(const MinedConstraint& a, const MinedConstraint& b) {
        return std::tie(a.template_id, a.duration, a.key, a.bounds) < std::tie(b.template_id, b.duration, b.key, b.bounds);
    }
};

inline Rational normalize(Normalization nu, Weekday w, std::int64_t headcount, MonthId month) {
    if (nu == Normalization::Unit) return Rational(headcount);
    return Rational(headcount, month.occurrences(w));
}

// Appends the observations of one window to `out`. Window is [first, last],
// 1-based and inclusive.
inline void collect_into(ObservationMultiset& out, const ConstraintTemplate& t, const std::vector<StaffId>& eligible,
                         const std::vector<ShiftSymbol>& shifts, const Roster& roster, int first, int last) {
    if (first < 1 || last > roster.days() || first > last) {
        throw DataError("window [" + std::to_string(first) + ", " + std::to_string(last) + "] outside " +
                        roster.month().to_string());
    }
    std::vector<std::size_t> rows;
    rows.reserve(eligible.size());
    for (const auto& e : eligible) {
        auto idx = roster.index_of(e);
        if (!idx) throw DataError("eligible staff " + e + " missing from roster " + roster.month().to_string());
        rows.push_back(*idx);
    }

    if (t.is_pattern()) {
        if (t.scope != StaffScope::One) throw UnsupportedTemplate("pattern templates need a single-staff scope");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::vector<std::string> seq;
            seq.reserve(static_cast<std::size_t>(last - first + 1));
            for (int d = first; d <= last; ++d) seq.push_back(roster.at(rows[i], d).code());
            out.add(compose_key(t.generality, eligible[i], std::nullopt, std::move(seq)), Rational(1));
        }
        return;
    }

    if (rows.empty()) return;
    const auto& cx = *t.count();
    for (int d = first; d <= last; ++d) {
        if (t.scope == StaffScope::One) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                out.add(compose_key(t.generality, eligible[i], std::nullopt, {roster.at(rows[i], d).code()}), Rational(1));
            }
        } else {
            Weekday w = roster.month().weekday(d);
            std::vector<std::string> targets;
            if (cx.target) {
                targets.push_back(*cx.target);
            } else {
                for (const auto& s : shifts) targets.push_back(s.code());
            }
            for (const auto& target : targets) {
                std::int64_t h = 0;
                for (auto r : rows) h += roster.at(r, d).code() == target ? 1 : 0;
                out.add(compose_key(t.generality, std::nullopt, w, {target}), normalize(cx.normalization, w, h, roster.month()));
            }
        }
    }
}

inline ObservationMultiset collect(const ConstraintTemplate& t, const std::vector<StaffId>& eligible,
                                   const std::vector<ShiftSymbol>& shifts, const Roster& roster, int first, int last) {
    ObservationMultiset out;
    collect_into(out, t, eligible, shifts, roster, first, last);
    return out;
}

// Sums multiplicity x weight per key and appends one total per key.
inline MonthlySummary reduce_month(const ObservationMultiset& month_obs, MonthlySummary running) {
    std::map<AggregationKey, Rational> totals;
    for (const auto& [kw, mult] : month_obs.entries()) {
        totals[kw.first] += kw.second * Rational(mult);
    }
    for (auto& [key, u] : totals) running.totals[key].push_back(u);
    return running;
}

// Pairs with no observation in any month that should still surface as 0..0
// count constraints (e.g. a day-only staff member's night shifts).
struct ZeroFill {
    std::vector<StaffId> staff;
    std::vector<std::string> shifts;
};

inline std::vector<MinedConstraint> reduce_final(const ConstraintTemplate& t, const MonthlySummary& summary,
                                                 const Rational& min_frequency,
                                                 const std::optional<ZeroFill>& zero_fill = std::nullopt) {
    if (summary.months_seen < 1) throw DataError("no months processed for template " + t.id);
    std::vector<MinedConstraint> out;
    for (const auto& [key, values] : summary.totals) {
        MinedConstraint c{t.id, t.duration, key, std::nullopt};
        if (t.is_pattern()) {
            Rational sum(0);
            for (const auto& v : values) sum += v;
            if (sum / Rational(summary.months_seen) >= min_frequency) out.push_back(std::move(c));
        } else {
            auto [mn, mx] = std::minmax_element(values.begin(), values.end());
            c.bounds = std::make_pair(floor_of(*mn), ceil_of(*mx));
            out.push_back(std::move(c));
        }
    }
    if (zero_fill && !t.is_pattern()) {
        for (const auto& e : zero_fill->staff) {
            for (const auto& s : zero_fill->shifts) {
                AggregationKey key = compose_key(t.generality, e, std::nullopt, {s});
                if (summary.totals.count(key)) continue;
                out.push_back(MinedConstraint{t.id, t.duration, key, std::make_pair(std::int64_t{0}, std::int64_t{0})});
            }
        }
        std::sort(out.begin(), out.end());
    }
    return out;
}

struct ExtractionParams {
    int n_min = 2;
    int n_max = 7;
    Rational min_margin = Rational(5, 4);       // tau_u
    Rational min_frequency = Rational(3, 20);   // tau_c
    Rational min_flexibility = Rational(1, 2);  // tau_f
};

// Shift symbols observed in the rosters, Off first, then day shifts, then
// nights, each group by code.
inline std::vector<ShiftSymbol> observed_shifts(const std::vector<Roster>& rosters) {
    std::vector<ShiftSymbol> out;
    for (const auto& r : rosters) {
        for (std::size_t i = 0; i < r.staff().size(); ++i) {
            for (const auto& s : r.row(i)) {
                if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ShiftSymbol& a, const ShiftSymbol& b) {
        return std::make_pair(static_cast<int>(a.kind()), a.code()) < std::make_pair(static_cast<int>(b.kind()), b.code());
    });
    return out;
}

// Full extraction loop. With exclusion disabled both gates pass everything;
// the frequency threshold still applies.
inline std::vector<MinedConstraint> extract_constraints(std::vector<Roster> rosters, const std::vector<RequestSet>& requests,
                                                        const std::optional<DemandTable>& demand,
                                                        const ExtractionParams& params, bool exclusion_enabled) {
    if (rosters.empty()) throw DataError("no historical rosters");
    std::sort(rosters.begin(), rosters.end(), [](const Roster& a, const Roster& b) { return a.month() < b.month(); });
    for (std::size_t i = 1; i < rosters.size(); ++i) {
        if (rosters[i].month() == rosters[i - 1].month()) {
            throw DataError("two rosters for " + rosters[i].month().to_string());
        }
    }
    std::map<MonthId, RequestSet> by_month;
    for (const auto& q : requests) {
        bool known = std::any_of(rosters.begin(), rosters.end(), [&](const Roster& r) { return r.month() == q.month(); });
        if (!known) throw DataError("requests for " + q.month().to_string() + " have no matching roster");
        if (!by_month.emplace(q.month(), q).second) throw DataError("two request sets for " + q.month().to_string());
    }

    const auto shifts = observed_shifts(rosters);
    const auto templates = build_templates(params.n_min, params.n_max, shifts);

    struct MonthContext {
        const Roster* roster;
        std::vector<StaffId> eligible;
        std::optional<MarginProfile> margin;
    };
    std::vector<MonthContext> months;
    std::optional<DemandTable> requirement = demand;
    if (exclusion_enabled && !requirement) requirement = bootstrap_demand(rosters);
    for (const auto& r : rosters) {
        MonthContext ctx{&r, r.staff(), std::nullopt};
        auto it = by_month.find(r.month());
        RequestSet q = it == by_month.end() ? RequestSet(r.month(), {}) : it->second;
        if (exclusion_enabled) {
            ctx.eligible = eligibles(r.staff(), r.month(), q, r, params.min_flexibility);
            ctx.margin = staffing_margin(r.month(), q, *requirement, r.staff());
        }
        months.push_back(std::move(ctx));
    }

    int widest = 0;
    for (const auto& r : rosters) widest = std::max(widest, r.days());

    std::vector<std::string> working_codes;
    for (const auto& s : shifts) {
        if (!s.is_off()) working_codes.push_back(s.code());
    }

    std::vector<MinedConstraint> out;
    for (const auto& t : templates) {
        MonthlySummary summary;
        for (const auto& ctx : months) {
            ++summary.months_seen;
            const Roster& r = *ctx.roster;
            const int n_eff = t.spans_month() ? r.days() : t.duration;
            ObservationMultiset month_obs;
            std::map<Weekday, int> kept_days;
            for (int start = 1; start <= r.days() - n_eff + 1; ++start) {
                int end = start + n_eff - 1;
                if (ctx.margin && !ctx.margin->passes(start, end, params.min_margin)) continue;
                collect_into(month_obs, t, ctx.eligible, shifts, r, start, end);
                for (int d = start; d <= end; ++d) ++kept_days[r.month().weekday(d)];
            }
            // Weekday averages are over the days that survived the gate.
            const auto* cx = t.count();
            if (cx && cx->normalization == Normalization::Weekday && n_eff == 1) {
                ObservationMultiset rescaled;
                for (const auto& [kw, mult] : month_obs.entries()) {
                    Weekday w = *kw.first.weekday;
                    Rational f(r.month().occurrences(w), kept_days.at(w));
                    for (std::int64_t k = 0; k < mult; ++k) rescaled.add(kw.first, kw.second * f);
                }
                month_obs = std::move(rescaled);
            }
            summary = reduce_month(month_obs, std::move(summary));
        }
        std::optional<ZeroFill> fill;
        if (t.id == "T3") {
            ZeroFill z;
            for (const auto& [key, values] : summary.totals) {
                if (key.staff && std::find(z.staff.begin(), z.staff.end(), *key.staff) == z.staff.end()) {
                    z.staff.push_back(*key.staff);
                }
            }
            z.shifts = working_codes;
            fill = std::move(z);
        }
        auto mined = reduce_final(t, summary, params.min_frequency, fill);
        for (auto& c : mined) {
            if (t.spans_month()) c.period_last_day = widest;
            out.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace rosterlearn
