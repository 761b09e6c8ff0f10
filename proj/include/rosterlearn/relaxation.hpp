#pragma once

// Relaxation ladder: solve; while not solved, demote every hard T2 pattern set
// of the current maximum length to soft; then drop request pins one at a
// time. After a success, dropped pins are offered back (kept if the schedule
// already honours them or a re-solve with the pin succeeds).

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "rosterlearn/solver.hpp"

namespace rosterlearn {

struct RelaxationStep {
    enum class Kind { DemoteT2, DropRequest, RestoreRequest };
    Kind kind = Kind::DemoteT2;
    int length = 0;            // DemoteT2
    std::size_t instances = 0;  // DemoteT2
    StaffId staff;             // request steps
    int day = 0;               // request steps
};

struct RelaxationTrace {
    std::vector<RelaxationStep> steps;
    SolveStatus final_status = SolveStatus::TimedOut;
    int attempts = 0;

    std::vector<int> relaxed_lengths() const {
        std::vector<int> out;
        for (const auto& s : steps) {
            if (s.kind == RelaxationStep::Kind::DemoteT2) out.push_back(s.length);
        }
        return out;
    }

    // Requests dropped and never restored, in drop order.
    std::vector<std::pair<StaffId, int>> dropped_requests() const {
        std::vector<std::pair<StaffId, int>> out;
        for (const auto& s : steps) {
            if (s.kind == RelaxationStep::Kind::DropRequest) {
                out.emplace_back(s.staff, s.day);
            } else if (s.kind == RelaxationStep::Kind::RestoreRequest) {
                out.erase(std::remove(out.begin(), out.end(), std::make_pair(s.staff, s.day)), out.end());
            }
        }
        return out;
    }

    // "relaxed_T2_lengths=[7,6]; dropped_requests=[(10007,14)]"
    std::string header() const {
        std::vector<std::string> lengths, drops;
        for (int n : relaxed_lengths()) lengths.push_back(std::to_string(n));
        for (const auto& [staff, day] : dropped_requests()) drops.push_back("(" + staff + "," + std::to_string(day) + ")");
        return "relaxed_T2_lengths=[" + text::join(lengths, ",") + "]; dropped_requests=[" + text::join(drops, ",") + "]";
    }
};

struct RelaxationResult {
    Schedule schedule;
    RelaxationTrace trace;
    CompiledSet final_constraints;
    std::vector<ConstraintInstance> dropped;
};

namespace detail {

inline bool is_t2_hard_pattern(const ConstraintInstance& c) {
    return c.hard && c.provenance.template_id == "T2" && c.provenance.origin == Origin::Mined &&
           std::holds_alternative<AllowedPatternSet>(c.body);
}

// u_d = (|staff| - Off pins on d) / sum over shifts of the largest hard demand
// lower bound on d. Days without demand rank last.
inline std::map<int, Rational> pin_margins(const ScheduleProblem& p) {
    std::map<int, int> off_pins;
    std::map<std::pair<int, std::string>, std::int64_t> need;
    for (const auto& c : p.constraints.hard) {
        if (const auto* pin = std::get_if<RequestPin>(&c.body)) {
            auto sym = p.shifts.find(pin->symbol);
            if (sym && sym->is_off()) ++off_pins[pin->day];
        } else if (const auto* dr = std::get_if<DemandRange>(&c.body)) {
            auto& v = need[{dr->day, dr->shift}];
            v = std::max(v, dr->lower);
        }
    }
    std::map<int, std::int64_t> required;
    for (const auto& [key, v] : need) required[key.first] += v;
    std::map<int, Rational> out;
    const auto staff = static_cast<std::int64_t>(p.staff.size());
    for (int d = 1; d <= p.days(); ++d) {
        auto r = required[d];
        out[d] = r > 0 ? Rational(staff - off_pins[d], r) : Rational(1'000'000);
    }
    return out;
}

}  // namespace detail

inline RelaxationResult solve_with_relaxation(ScheduleProblem problem) {
    RelaxationResult res;
    auto attempt = [&]() {
        ++res.trace.attempts;
        return solve(problem);
    };
    Schedule s = attempt();

    while (!s.ok()) {
        int longest = 0;
        for (const auto& c : problem.constraints.hard) {
            if (detail::is_t2_hard_pattern(c)) longest = std::max(longest, std::get<AllowedPatternSet>(c.body).length);
        }
        if (longest == 0) break;
        std::vector<ConstraintInstance> keep;
        std::size_t moved = 0;
        for (auto& c : problem.constraints.hard) {
            if (detail::is_t2_hard_pattern(c) && std::get<AllowedPatternSet>(c.body).length == longest) {
                c.hard = false;
                c.weight = 1;
                problem.constraints.soft.push_back(std::move(c));
                ++moved;
            } else {
                keep.push_back(std::move(c));
            }
        }
        problem.constraints.hard = std::move(keep);
        res.trace.steps.push_back({RelaxationStep::Kind::DemoteT2, longest, moved, {}, 0});
        s = attempt();
    }

    if (!s.ok()) {
        auto margin = detail::pin_margins(problem);
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < problem.constraints.hard.size(); ++i) {
            if (std::holds_alternative<RequestPin>(problem.constraints.hard[i].body)) order.push_back(i);
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto& pa = std::get<RequestPin>(problem.constraints.hard[a].body);
            const auto& pb = std::get<RequestPin>(problem.constraints.hard[b].body);
            return std::tie(margin[pa.day], pa.staff, pa.day) < std::tie(margin[pb.day], pb.staff, pb.day);
        });
        std::vector<ConstraintInstance> queue;
        for (auto i : order) queue.push_back(problem.constraints.hard[i]);
        for (const auto& pin_instance : queue) {
            auto it = std::find_if(problem.constraints.hard.begin(), problem.constraints.hard.end(),
                                   [&](const ConstraintInstance& c) { return c.id == pin_instance.id; });
            res.dropped.push_back(*it);
            problem.constraints.hard.erase(it);
            const auto& pin = std::get<RequestPin>(pin_instance.body);
            res.trace.steps.push_back({RelaxationStep::Kind::DropRequest, 0, 0, pin.staff, pin.day});
            s = attempt();
            if (s.ok()) break;
        }
    }

    // Offer dropped pins back until nothing changes.
    if (s.ok() && !res.dropped.empty()) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < res.dropped.size(); ++i) {
                const auto pin = std::get<RequestPin>(res.dropped[i].body);
                auto row = s.roster->index_of(pin.staff);
                bool honoured = row && s.roster->at(*row, pin.day).code() == pin.symbol;
                ScheduleProblem trial = problem;
                trial.constraints.hard.push_back(res.dropped[i]);
                if (!honoured) {
                    ++res.trace.attempts;
                    Schedule again = solve(trial);
                    if (!again.ok()) continue;
                    s = std::move(again);
                } else {
                    // Same schedule stays valid; recompute its objective under the new set.
                    s.objective = check_violations(*s.roster, trial.constraints).soft_objective;
                }
                problem = std::move(trial);
                res.trace.steps.push_back({RelaxationStep::Kind::RestoreRequest, 0, 0, pin.staff, pin.day});
                res.dropped.erase(res.dropped.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }

    res.trace.final_status = s.status;
    res.schedule = std::move(s);
    res.final_constraints = std::move(problem.constraints);
    return res;
}

}  // namespace rosterlearn
