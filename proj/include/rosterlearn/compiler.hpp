#pragma once

// Mined constraints -> solver-facing instances.
//   T1 -> soft allowed-pattern set per staff per length
//   T2 -> hard allowed-pattern set (all staff) per length
//   T3 -> soft [lo, hi] + hard [lo-1, hi+1]
//   T4 -> per day of the target month: soft [lo, hi] + hard [lo-slack, hi+slack]
// plus defaults: exactly one symbol per cell, request pins, demand coverage.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rosterlearn/mined_io.hpp"
#include "rosterlearn/roster.hpp"
#include "rosterlearn/templates.hpp"

namespace rosterlearn {

enum class Origin { Mined, Default, Mirrored, Manual };

inline std::string_view origin_name(Origin o) {
    switch (o) {
        case Origin::Mined: return "mined";
        case Origin::Default: return "default";
        case Origin::Mirrored: return "mirrored";
        case Origin::Manual: return "manual";
    }
    return "?";
}

struct Provenance {
    std::string template_id;  // T1..T4, or a default kind ("one", "pin", "demand")
    int duration = 0;
    Origin origin = Origin::Mined;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Every length-n window of each scoped staff row must equal one allowed sequence.
struct AllowedPatternSet {
    std::optional<StaffId> staff;  // empty: every staff member
    int length = 2;
    std::vector<std::vector<std::string>> allowed;  // sorted, unique
    friend bool operator==(const AllowedPatternSet&, const AllowedPatternSet&) = default;
};

// Monthly occurrences of `shift` (empty: any working shift) for one staff member.
struct CountRange {
    StaffId staff;
    std::optional<std::string> shift;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    friend bool operator==(const CountRange&, const CountRange&) = default;
};

// Headcount on `shift` for one day.
struct DemandRange {
    int day = 1;
    std::string shift;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    friend bool operator==(const DemandRange&, const DemandRange&) = default;
};

struct AssignExactlyOne {
    StaffId staff;
    int day = 1;
    friend bool operator==(const AssignExactlyOne&, const AssignExactlyOne&) = default;
};

struct RequestPin {
    StaffId staff;
    int day = 1;
    std::string symbol;
    friend bool operator==(const RequestPin&, const RequestPin&) = default;
};

using ConstraintBody = std::variant<AllowedPatternSet, CountRange, DemandRange, AssignExactlyOne, RequestPin>;

struct ConstraintInstance {
    std::string id;
    bool hard = true;
    int weight = 1;  // meaningful when soft
    ConstraintBody body;
    Provenance provenance;

    friend bool operator==(const ConstraintInstance&, const ConstraintInstance&) = default;
};

inline std::optional<StaffId> staff_of(const ConstraintBody& b) {
    return std::visit(
        [](const auto& x) -> std::optional<StaffId> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AllowedPatternSet>) {
                return x.staff;
            } else if constexpr (std::is_same_v<T, DemandRange>) {
                return std::nullopt;
            } else {
                return x.staff;
            }
        },
        b);
}

struct CompiledSet {
    std::vector<ConstraintInstance> hard;
    std::vector<ConstraintInstance> soft;
    // Instances about staff who are not in the target month; kept for audit.
    std::vector<ConstraintInstance> inactive;

    std::size_t size() const { return hard.size() + soft.size(); }
};

struct CompilePolicy {
    int count_slack = 1;
    int demand_slack_lower = 1;
    int demand_slack_upper = 1;
    // Soft weight per template id (T1..T4, pin); missing entries weigh 1.
    std::map<std::string, int> weights;

    int weight_for(const std::string& template_id) const {
        auto it = weights.find(template_id);
        return it == weights.end() ? 1 : it->second;
    }
};

struct CompileContext {
    MonthId month;
    std::vector<StaffId> staff;
    RequestSet requests;
    std::optional<DemandTable> demand;
    std::vector<ManualConstraint> manual;
    int horizon = 0;  // 0: whole month

    int days() const { return horizon ? horizon : month.last_day(); }
};

namespace detail {

class Builder {
public:
    Builder(const CompileContext& ctx) : staff_(ctx.staff.begin(), ctx.staff.end()) {}

    void add(bool hard, int weight, ConstraintBody body, Provenance p) {
        ConstraintInstance c{"c" + std::to_string(++counter_), hard, weight, std::move(body), std::move(p)};
        auto who = staff_of(c.body);
        if (who && !staff_.count(*who)) {
            out.inactive.push_back(std::move(c));
        } else if (hard) {
            out.hard.push_back(std::move(c));
        } else {
            out.soft.push_back(std::move(c));
        }
    }

    CompiledSet out;

private:
    std::set<StaffId> staff_;
    int counter_ = 0;
};

inline std::int64_t clamp0(std::int64_t v) { return v < 0 ? 0 : v; }

}  // namespace detail

inline CompiledSet compile(const std::vector<MinedConstraint>& mined, const CompileContext& ctx,
                           const CompilePolicy& policy = {}) {
    if (ctx.requests.month() != ctx.month && !ctx.requests.empty()) {
        throw DataError("requests are for " + ctx.requests.month().to_string() + ", target month is " + ctx.month.to_string());
    }
    detail::Builder b(ctx);

    // Patterns are grouped: T1 by (staff, length), T2 by length.
    std::map<std::pair<StaffId, int>, std::vector<std::vector<std::string>>> t1;
    std::map<int, std::vector<std::vector<std::string>>> t2;
    for (const auto& c : mined) {
        if (c.template_id == "T1") {
            t1[{c.key.staff.value(), c.duration}].push_back(c.key.shifts);
        } else if (c.template_id == "T2") {
            t2[c.duration].push_back(c.key.shifts);
        }
    }
    auto normalize_allowed = [](std::vector<std::vector<std::string>> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    for (auto& [sk, seqs] : t1) {
        b.add(false, policy.weight_for("T1"), AllowedPatternSet{sk.first, sk.second, normalize_allowed(std::move(seqs))},
              {"T1", sk.second, Origin::Mined});
    }
    for (auto& [n, seqs] : t2) {
        b.add(true, 1, AllowedPatternSet{std::nullopt, n, normalize_allowed(std::move(seqs))}, {"T2", n, Origin::Mined});
    }

    for (const auto& c : mined) {
        if (c.template_id == "T3") {
            CountRange soft{c.key.staff.value(), c.key.shifts.at(0), c.lower(), c.upper()};
            CountRange hard = soft;
            if (c.upper() == 0) {
                hard.lower = hard.upper = 0;  // never worked that shift: keep it forbidden
            } else {
                hard.lower = detail::clamp0(c.lower() - policy.count_slack);
                hard.upper = c.upper() + policy.count_slack;
            }
            b.add(false, policy.weight_for("T3"), soft, {"T3", kMonthDuration, Origin::Mined});
            b.add(true, 1, hard, {"T3", kMonthDuration, Origin::Mined});
        } else if (c.template_id == "T4") {
            for (int d = 1; d <= ctx.days(); ++d) {
                if (ctx.month.weekday(d) != c.key.weekday.value()) continue;
                const auto& s = c.key.shifts.at(0);
                b.add(false, policy.weight_for("T4"), DemandRange{d, s, c.lower(), c.upper()}, {"T4", 1, Origin::Mined});
                b.add(true, 1,
                      DemandRange{d, s, detail::clamp0(c.lower() - policy.demand_slack_lower),
                                  c.upper() + policy.demand_slack_upper},
                      {"T4", 1, Origin::Mined});
            }
        } else if (c.template_id != "T1" && c.template_id != "T2") {
            throw DataError("cannot compile constraint from unknown template '" + c.template_id + "'");
        }
    }

    // Manual pattern lines sharing hardness, weight, template, staff and length
    // form one allowed set.
    std::map<std::tuple<bool, int, std::string, std::optional<StaffId>, int>, std::vector<std::vector<std::string>>> manual_sets;
    for (const auto& m : ctx.manual) {
        if (m.body.is_pattern()) {
            manual_sets[{m.hard, m.weight, m.body.template_id, m.body.key.staff, m.body.duration}].push_back(m.body.key.shifts);
        }
    }
    for (auto& [k, seqs] : manual_sets) {
        const auto& [hard, weight, tid, staff, n] = k;
        b.add(hard, weight, AllowedPatternSet{staff, n, normalize_allowed(std::move(seqs))}, {tid, n, Origin::Manual});
    }
    for (const auto& m : ctx.manual) {
        const auto& c = m.body;
        Provenance p{c.template_id, c.duration, Origin::Manual};
        if (c.is_pattern()) {
            continue;
        } else if (c.template_id == "T3") {
            std::optional<std::string> shift = c.key.shifts.at(0);
            if (*shift == "*") shift.reset();
            b.add(m.hard, m.weight, CountRange{c.key.staff.value(), shift, c.lower(), c.upper()}, p);
        } else {
            for (int d = 1; d <= ctx.days(); ++d) {
                if (ctx.month.weekday(d) == c.key.weekday.value()) {
                    b.add(m.hard, m.weight, DemandRange{d, c.key.shifts.at(0), c.lower(), c.upper()}, p);
                }
            }
        }
    }

    for (const auto& e : ctx.staff) {
        for (int d = 1; d <= ctx.days(); ++d) b.add(true, 1, AssignExactlyOne{e, d}, {"one", 1, Origin::Default});
    }
    for (const auto& r : ctx.requests.entries()) {
        b.add(true, 1, RequestPin{r.staff, r.day, r.symbol.code()}, {"pin", 1, Origin::Default});
    }
    if (ctx.demand) {
        const auto headcount = static_cast<std::int64_t>(ctx.staff.size());
        for (int d = 1; d <= ctx.days(); ++d) {
            Weekday w = ctx.month.weekday(d);
            for (const auto& [key, need] : ctx.demand->rows()) {
                if (key.first != w || need <= 0) continue;
                b.add(true, 1, DemandRange{d, key.second, need, std::max<std::int64_t>(need, headcount)},
                      {"demand", 1, Origin::Default});
            }
        }
    }
    return std::move(b.out);
}

// Attributes a donor is matched on.
struct StaffAttributes {
    std::set<std::string> feasible_shifts;
    Rational working_days;
};

// Derived from the soft T3 ranges: shifts with a positive upper bound, and
// the sum of range midpoints over working shifts.
inline std::map<StaffId, StaffAttributes> staff_attributes(const CompiledSet& compiled, const ShiftAlphabet& shifts) {
    std::map<StaffId, StaffAttributes> out;
    for (const auto& c : compiled.soft) {
        if (c.provenance.template_id != "T3" || c.provenance.origin == Origin::Manual) continue;
        const auto* cr = std::get_if<CountRange>(&c.body);
        if (!cr || !cr->shift) continue;
        auto sym = shifts.find(*cr->shift);
        if (!sym || sym->is_off()) continue;
        auto& a = out[cr->staff];
        if (cr->upper > 0) a.feasible_shifts.insert(*cr->shift);
        a.working_days += Rational(cr->lower + cr->upper, 2);
    }
    return out;
}

// Copies the donor's staff-specific constraints to `new_staff`. The donor is
// the staff member with the same feasible-shift set whose working-day target
// is closest; ties go to the smaller id.
inline CompiledSet mirror_for_new_staff(const CompiledSet& compiled, const StaffId& new_staff,
                                        const StaffAttributes& attributes, const ShiftAlphabet& shifts) {
    auto attrs = staff_attributes(compiled, shifts);
    std::optional<StaffId> donor;
    Rational best_gap;
    std::vector<std::string> candidates;
    for (const auto& [id, a] : attrs) {
        candidates.push_back(id + "{" + text::join({a.feasible_shifts.begin(), a.feasible_shifts.end()}, " ") + "}");
        if (id == new_staff || a.feasible_shifts != attributes.feasible_shifts) continue;
        Rational gap = a.working_days - attributes.working_days;
        if (gap < 0) gap = -gap;
        if (!donor || gap < best_gap) {
            donor = id;
            best_gap = gap;
        }
    }
    if (!donor) {
        throw ConfigError("no existing staff shares the feasible shifts {" +
                          text::join({attributes.feasible_shifts.begin(), attributes.feasible_shifts.end()}, " ") +
                          "} of " + new_staff + "; candidates: " + text::join(candidates, ", "));
    }

    CompiledSet out = compiled;
    int counter = 0;
    auto clone_from = [&](const std::vector<ConstraintInstance>& src, std::vector<ConstraintInstance>& dst) {
        std::vector<ConstraintInstance> copies;
        for (const auto& c : src) {
            auto who = staff_of(c.body);
            if (!who || *who != *donor) continue;
            if (std::holds_alternative<RequestPin>(c.body)) continue;
            ConstraintInstance copy = c;
            std::visit(
                [&](auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (!std::is_same_v<T, DemandRange>) x.staff = new_staff;
                },
                copy.body);
            copy.id = "m" + std::to_string(++counter) + ":" + new_staff;
            copy.provenance.origin = Origin::Mirrored;
            copies.push_back(std::move(copy));
        }
        dst.insert(dst.end(), copies.begin(), copies.end());
    };
    clone_from(compiled.hard, out.hard);
    clone_from(compiled.soft, out.soft);
    return out;
}

inline std::string format_body(const ConstraintBody& body) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AllowedPatternSet>) {
                std::vector<std::string> seqs;
                for (const auto& s : x.allowed) seqs.push_back(text::join(s, " "));
                return "pattern(" + x.staff.value_or("*") + ", " + std::to_string(x.length) + ", [" +
                       text::join(seqs, "; ") + "])";
            } else if constexpr (std::is_same_v<T, CountRange>) {
                return "count(" + x.staff + ", " + x.shift.value_or("*") + ", " + std::to_string(x.lower) + ", " +
                       std::to_string(x.upper) + ")";
            } else if constexpr (std::is_same_v<T, DemandRange>) {
                return "demand(" + std::to_string(x.day) + ", " + x.shift + ", " + std::to_string(x.lower) + ", " +
                       std::to_string(x.upper) + ")";
            } else if constexpr (std::is_same_v<T, AssignExactlyOne>) {
                return "one(" + x.staff + ", " + std::to_string(x.day) + ")";
            } else {
                return "pin(" + x.staff + ", " + std::to_string(x.day) + ", " + x.symbol + ")";
            }
        },
        body);
}

inline std::string format_instance(const ConstraintInstance& c) {
    std::string origin = std::string(origin_name(c.provenance.origin)) + ":" + c.provenance.template_id;
    if (c.provenance.template_id == "T1" || c.provenance.template_id == "T2") {
        origin += "/" + std::to_string(c.provenance.duration);
    }
    return (c.hard ? std::string("hard") : "soft:" + std::to_string(c.weight)) + "|" + origin + "|" + format_body(c.body);
}

// One line per instance: hard set, then soft, then inactive (prefixed "inactive ").
inline std::string dump_compiled(const CompiledSet& set) {
    std::string out;
    for (const auto& c : set.hard) out += format_instance(c) + "\n";
    for (const auto& c : set.soft) out += format_instance(c) + "\n";
    for (const auto& c : set.inactive) out += "inactive " + format_instance(c) + "\n";
    return out;
}

}  // namespace rosterlearn
