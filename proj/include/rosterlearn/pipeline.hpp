#pragma once

// File-level pipeline behind the command-line tool: corpus generation,
// extraction, month planning and evaluation. Paths come from RunConfig and are
// taken relative to the working directory.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rosterlearn/compiler.hpp"
#include "rosterlearn/config.hpp"
#include "rosterlearn/evaluator.hpp"
#include "rosterlearn/exception_filter.hpp"
#include "rosterlearn/mined_io.hpp"
#include "rosterlearn/relaxation.hpp"
#include "rosterlearn/synthetic.hpp"
#include "rosterlearn/templates.hpp"

namespace rosterlearn {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// small file helpers

inline std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_text(const fs::path& p, const std::string& content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + p.string());
    out << content;
}

// Months with a "<YYYY-MM>.csv" file in dir, ascending.
inline std::vector<MonthId> months_in(const fs::path& dir) {
    std::vector<MonthId> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file() || e.path().extension() != ".csv") continue;
        try {
            out.push_back(MonthId::parse(e.path().stem().string()));
        } catch (const DataError&) {
            // not a month file
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline fs::path month_file(const fs::path& dir, MonthId m) { return dir / (m.to_string() + ".csv"); }

inline ExtractionParams extraction_params(const RunConfig& cfg) {
    return ExtractionParams{cfg.n_min, cfg.n_max, cfg.tau_u, cfg.tau_c, cfg.tau_f};
}

inline CompilePolicy compile_policy(const RunConfig& cfg) {
    CompilePolicy p;
    p.count_slack = cfg.t3_slack;
    p.demand_slack_lower = cfg.t4_slack_lower;
    p.demand_slack_upper = cfg.t4_slack_upper;
    return p;
}

inline std::uint64_t month_seed(std::uint64_t seed, MonthId m) {
    return seed * 1'000'003ull + static_cast<std::uint64_t>(m.year() * 12 + m.month());
}

// ---------------------------------------------------------------------------
// inputs

struct History {
    std::vector<Roster> rosters;
    std::vector<RequestSet> requests;
};

inline std::optional<ShiftMapping> load_mapping(const RunConfig& cfg) {
    if (cfg.mapping_file.empty()) return std::nullopt;
    std::istringstream in(read_text(cfg.mapping_file));
    return parse_mapping(in);
}

inline RequestSet load_requests(const RunConfig& cfg, MonthId m, const std::optional<ShiftMapping>& mapping) {
    auto path = month_file(cfg.requests_dir, m);
    if (!fs::exists(path)) return RequestSet(m, {});
    auto alphabet = mapping ? mapping->detailed_alphabet() : ShiftAlphabet::standard();
    auto raw = parse_requests(read_text(path), m, alphabet);
    if (!mapping) return raw;
    std::vector<Request> out;
    for (const auto& r : raw.entries()) out.push_back({r.staff, r.day, *mapping->lookup(r.symbol.code())});
    return RequestSet(m, std::move(out));
}

inline History load_history(const RunConfig& cfg) {
    auto months = months_in(cfg.rosters_dir);
    if (months.empty()) throw DataError("no roster files (YYYY-MM.csv) in " + cfg.rosters_dir);
    auto mapping = load_mapping(cfg);
    History h;
    for (MonthId m : months) {
        auto text = read_text(month_file(cfg.rosters_dir, m));
        try {
            if (mapping) {
                h.rosters.push_back(abstract_roster(parse_roster(text, m, mapping->detailed_alphabet()), *mapping));
            } else {
                h.rosters.push_back(parse_roster(text, m, ShiftAlphabet::standard()));
            }
            h.requests.push_back(load_requests(cfg, m, mapping));
        } catch (const ParseError& e) {
            throw DataError(month_file(cfg.rosters_dir, m).string() + ": " + e.what());
        }
    }
    return h;
}

inline std::optional<DemandTable> load_demand(const RunConfig& cfg) {
    if (cfg.demand_file.empty()) return std::nullopt;
    return parse_demand(read_text(cfg.demand_file));
}

inline std::vector<ManualConstraint> load_manual(const RunConfig& cfg) {
    if (cfg.manual_constraints_file.empty()) return {};
    return parse_manual_file(read_text(cfg.manual_constraints_file));
}

// ---------------------------------------------------------------------------
// gen

inline void write_corpus(const Corpus& c, const fs::path& dir, const SyntheticSpec& spec) {
    for (std::size_t i = 0; i < c.rosters.size(); ++i) {
        write_text(month_file(dir / "rosters", c.rosters[i].month()), render_roster(c.rosters[i]));
        write_text(month_file(dir / "requests", c.requests[i].month()), render_requests(c.requests[i]));
    }
    for (std::size_t i = 0; i < c.target_reference.size(); ++i) {
        write_text(month_file(dir / "reference", c.target_reference[i].month()), render_roster(c.target_reference[i]));
        write_text(month_file(dir / "requests", c.target_requests[i].month()), render_requests(c.target_requests[i]));
    }
    write_text(dir / "demand.csv", render_demand(c.demand));
    std::string manual;
    for (const auto& m : c.manual) manual += format_manual(m) + "\n";
    write_text(dir / "manual.txt", manual);
    write_text(dir / "evaluation.csv", render_evaluation_config(c.evaluation));
    write_text(dir / "manifest.txt", render_manifest(c.manifest));

    RunConfig cfg;
    cfg.rosters_dir = "rosters";
    cfg.requests_dir = "requests";
    cfg.demand_file = "demand.csv";
    cfg.manual_constraints_file = "manual.txt";
    cfg.evaluation_file = "evaluation.csv";
    cfg.output_dir = "out";
    cfg.n_min = spec.n_min;
    cfg.n_max = spec.n_max;
    cfg.seed = spec.seed;
    write_text(dir / "rosterlearn.conf", render_config(cfg));
}

inline Corpus cmd_gen(const SyntheticSpec& spec, const fs::path& dir) {
    auto corpus = generate_corpus(spec);
    write_corpus(corpus, dir, spec);
    return corpus;
}

// ---------------------------------------------------------------------------
// extract

struct ExtractOutput {
    std::vector<MinedConstraint> mined;
    std::map<MonthId, std::string> margin_reports;
};

inline ExtractOutput run_extract(const History& h, const std::optional<DemandTable>& demand, const RunConfig& cfg) {
    validate(cfg);
    ExtractOutput out;
    const auto params = extraction_params(cfg);
    out.mined = extract_constraints(h.rosters, h.requests, demand, params, cfg.exclusion);
    if (cfg.exclusion) {
        DemandTable req = demand ? *demand : bootstrap_demand(h.rosters);
        for (std::size_t i = 0; i < h.rosters.size(); ++i) {
            const auto& r = h.rosters[i];
            auto profile = staffing_margin(r.month(), h.requests[i], req, r.staff());
            out.margin_reports[r.month()] = render_margin_report(profile, cfg.tau_u);
        }
    }
    return out;
}

inline ExtractOutput cmd_extract(const RunConfig& cfg) {
    auto out = run_extract(load_history(cfg), load_demand(cfg), cfg);
    const fs::path dir = cfg.output_dir;
    write_text(dir / "mined.txt", render_mined_file(out.mined));
    for (const auto& [m, report] : out.margin_reports) write_text(month_file(dir / "margins", m), report);
    return out;
}

// ---------------------------------------------------------------------------
// solve

struct MonthInputs {
    MonthId month;
    std::vector<StaffId> staff;
    RequestSet requests;
    std::optional<DemandTable> demand;
    std::vector<ManualConstraint> manual;
    int horizon = 0;
};

struct MonthPlan {
    MonthId month;
    RelaxationResult result;
};

inline MonthPlan plan_month(const std::vector<MinedConstraint>& mined, const MonthInputs& in, const RunConfig& cfg) {
    CompileContext ctx{in.month, in.staff, in.requests, in.demand, in.manual, in.horizon};
    ScheduleProblem p;
    p.month = in.month;
    p.staff = in.staff;
    p.constraints = compile(mined, ctx, compile_policy(cfg));
    p.time_budget_seconds = cfg.time_budget;
    p.seed = month_seed(cfg.seed, in.month);
    p.horizon = in.horizon;
    return {in.month, solve_with_relaxation(std::move(p))};
}

// Schedule file: trace and month as comments, then the roster, then status.
inline std::string render_plan(const MonthPlan& plan) {
    return "# month=" + plan.month.to_string() + "\n# " + plan.result.trace.header() + "\n" +
           render_schedule(plan.result.schedule);
}

struct ScheduleFile {
    MonthId month;
    std::optional<Roster> roster;
    std::string status;
    std::string trace;
};

inline ScheduleFile parse_schedule_file(const std::string& content) {
    ScheduleFile f;
    std::istringstream in(content);
    std::string line;
    bool have_month = false;
    while (std::getline(in, line)) {
        auto t = std::string(text::trim(line));
        if (t.rfind("# month=", 0) == 0) {
            f.month = MonthId::parse(t.substr(8));
            have_month = true;
        } else if (t.rfind("# relaxed_T2_lengths=", 0) == 0) {
            f.trace = t.substr(2);
        } else if (t.rfind("# status=", 0) == 0) {
            auto sp = t.find(' ', 9);
            f.status = t.substr(9, sp == std::string::npos ? std::string::npos : sp - 9);
        }
    }
    if (!have_month) throw DataError("schedule file lacks a '# month=' line");
    if (f.status == "optimal" || f.status == "feasible") f.roster = parse_roster(content, f.month, ShiftAlphabet::standard());
    return f;
}

inline std::vector<StaffId> latest_staff(const RunConfig& cfg) {
    auto months = months_in(cfg.rosters_dir);
    if (months.empty()) throw DataError("no roster files in " + cfg.rosters_dir + " to take the staff list from");
    auto mapping = load_mapping(cfg);
    auto alphabet = mapping ? mapping->detailed_alphabet() : ShiftAlphabet::standard();
    return parse_roster(read_text(month_file(cfg.rosters_dir, months.back())), months.back(), alphabet).staff();
}

// Target months: those with a request file but no history roster.
inline std::vector<MonthId> pending_months(const RunConfig& cfg) {
    auto history = months_in(cfg.rosters_dir);
    std::vector<MonthId> out;
    for (MonthId m : months_in(cfg.requests_dir)) {
        if (!std::binary_search(history.begin(), history.end(), m)) out.push_back(m);
    }
    return out;
}

// Solves each month (in parallel up to cfg.jobs) and writes
// <output_dir>/schedules/<month>.csv. Results come back in input order.
inline std::vector<MonthPlan> cmd_solve(const RunConfig& cfg, std::vector<MonthId> months) {
    validate(cfg);
    const fs::path mined_path = fs::path(cfg.output_dir) / "mined.txt";
    if (!fs::exists(mined_path)) throw ConfigError("no mined constraints at " + mined_path.string() + "; run extract first");
    const auto mined = parse_mined_file(read_text(mined_path));
    if (months.empty()) months = pending_months(cfg);
    if (months.empty()) throw DataError("no target month: pass --month or add request files for months without a roster");

    const auto staff = latest_staff(cfg);
    const auto demand = load_demand(cfg);
    const auto manual = load_manual(cfg);
    const auto mapping = load_mapping(cfg);
    std::vector<MonthInputs> inputs;
    for (MonthId m : months) inputs.push_back({m, staff, load_requests(cfg, m, mapping), demand, manual, 0});

    std::vector<std::optional<MonthPlan>> plans(inputs.size());
    std::vector<std::exception_ptr> errors(inputs.size());
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
        while (true) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= inputs.size()) return;
                i = next++;
            }
            try {
                plans[i] = plan_month(mined, inputs[i], cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), inputs.size());
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::vector<MonthPlan> out;
    for (auto& p : plans) {
        write_text(month_file(fs::path(cfg.output_dir) / "schedules", p->month), render_plan(*p));
        out.push_back(std::move(*p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// evaluate

inline EvaluationConfig load_evaluation(const RunConfig& cfg, MonthId m) {
    if (cfg.evaluation_file.empty()) throw ConfigError("evaluation_file is not configured");
    auto e = parse_evaluation_config(read_text(cfg.evaluation_file));
    if (auto d = load_demand(cfg)) e.demand = *d;
    e.requests = load_requests(cfg, m, load_mapping(cfg));
    return e;
}

struct EvaluateOutput {
    ViolationReport a;
    std::optional<ViolationReport> b;
    std::vector<ComparisonRow> comparison;
};

// Solver output, or a bare roster grid named YYYY-MM.csv (e.g. a reference month).
inline ScheduleFile read_schedule_or_roster(const fs::path& path) {
    const auto content = read_text(path);
    if (content.find("# month=") != std::string::npos) return parse_schedule_file(content);
    ScheduleFile f;
    f.month = MonthId::parse(path.stem().string());
    f.roster = parse_roster(content, f.month, ShiftAlphabet::standard());
    f.status = "reference";
    return f;
}

inline ViolationReport evaluate_schedule_file(const RunConfig& cfg, const fs::path& path) {
    auto f = read_schedule_or_roster(path);
    if (!f.roster) throw DataError(path.string() + " holds no schedule (status " + f.status + ")");
    return evaluate(*f.roster, load_evaluation(cfg, f.month), path.stem().string(), true, f.trace);
}

inline EvaluateOutput cmd_evaluate(const RunConfig& cfg, const fs::path& schedule, const std::optional<fs::path>& other) {
    EvaluateOutput out;
    out.a = evaluate_schedule_file(cfg, schedule);
    const fs::path dir = fs::path(cfg.output_dir) / "reports";
    write_text(dir / (schedule.stem().string() + ".csv"), render_report_csv(out.a));
    if (other) {
        out.b = evaluate_schedule_file(cfg, *other);
        out.comparison = compare_runs(out.a, *out.b);
        write_text(dir / (schedule.stem().string() + "_vs_" + other->stem().string() + ".csv"),
                   render_comparison(out.comparison));
    }
    return out;
}

}  // namespace rosterlearn
