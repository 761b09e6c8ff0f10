// rosterlearn command-line tool: gen, extract, solve, evaluate.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rosterlearn/rosterlearn.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 2;
constexpr int kConfigError = 3;
constexpr int kDataError = 4;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    bool no_exclusion = false;
    std::optional<double> time_budget;
    std::optional<int> jobs;
};

rosterlearn::RunConfig resolve(const Flags& f) {
    auto cfg = rosterlearn::load_config(f.config);
    if (f.seed) cfg.seed = *f.seed;
    if (f.no_exclusion) cfg.exclusion = false;
    if (f.time_budget) {
        if (*f.time_budget <= 0) throw rosterlearn::ConfigError("--time-budget must be positive");
        cfg.time_budget = *f.time_budget;
    }
    if (f.jobs) cfg.jobs = *f.jobs;
    rosterlearn::validate(cfg);
    return cfg;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "key=value configuration file");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_flag("--no-exclusion", f.no_exclusion, "disable the exception filter");
    cmd->add_option("--time-budget", f.time_budget, "solver wall-clock cap per month, seconds");
    cmd->add_option("--jobs", f.jobs, "months solved in parallel");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace rosterlearn;
    CLI::App app{"Learn rostering constraints from past schedules and plan new months"};
    app.require_subcommand(1);
    Flags flags;

    auto* gen = app.add_subcommand("gen", "write a synthetic corpus with its ground-truth manifest");
    std::string gen_dir = "corpus";
    SyntheticSpec spec;
    gen->add_option("dir", gen_dir, "output directory");
    gen->add_option("--seed", spec.seed, "generator seed");
    gen->add_option("--months", spec.months, "history months");
    gen->add_option("--exception-months", spec.exception_months, "months carrying planted exceptions");
    gen->add_option("--target-months", spec.target_months, "months to plan after the history");

    auto* extract = app.add_subcommand("extract", "mine constraints from the roster history");
    add_common(extract, flags);

    auto* solve_cmd = app.add_subcommand("solve", "plan one or more months");
    add_common(solve_cmd, flags);
    std::vector<std::string> months;
    solve_cmd->add_option("--month", months, "YYYY-MM (repeatable; default: every month with requests but no roster)");

    auto* eval = app.add_subcommand("evaluate", "score schedules against the violation catalogue");
    add_common(eval, flags);
    std::string schedule_a;
    std::optional<std::string> schedule_b;
    eval->add_option("schedule", schedule_a, "schedule file")->required();
    eval->add_option("other", schedule_b, "second schedule to compare against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (gen->parsed()) {
            auto corpus = cmd_gen(spec, gen_dir);
            std::cout << "wrote " << corpus.rosters.size() << " history months and " << corpus.target_reference.size()
                      << " target months to " << gen_dir << "\n";
            return kOk;
        }
        const RunConfig cfg = resolve(flags);
        if (extract->parsed()) {
            auto out = cmd_extract(cfg);
            std::map<std::string, int> per_template;
            for (const auto& c : out.mined) ++per_template[c.template_id];
            std::cout << "mined " << out.mined.size() << " constraints";
            for (const auto& [t, n] : per_template) std::cout << "  " << t << "=" << n;
            std::cout << "\nwritten to " << (fs::path(cfg.output_dir) / "mined.txt").string() << "\n";
            return kOk;
        }
        if (solve_cmd->parsed()) {
            std::vector<MonthId> ids;
            for (const auto& m : months) ids.push_back(MonthId::parse(m));
            auto plans = cmd_solve(cfg, ids);
            bool failed = false;
            for (const auto& p : plans) {
                const auto& s = p.result.schedule;
                std::cout << p.month.to_string() << " " << status_name(s.status) << " objective=" << s.objective << " "
                          << p.result.trace.header() << "\n";
                if (!s.ok()) {
                    failed = true;
                    if (!s.explanation.empty()) std::cerr << p.month.to_string() << ": " << s.explanation << "\n";
                }
            }
            return failed ? kInfeasible : kOk;
        }
        if (eval->parsed()) {
            std::optional<fs::path> other;
            if (schedule_b) other = *schedule_b;
            auto out = cmd_evaluate(cfg, schedule_a, other);
            std::cout << render_report_table(out.a);
            if (out.b) {
                std::cout << render_report_table(*out.b) << render_comparison(out.comparison);
            }
            return kOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    }
    return kOk;
}
