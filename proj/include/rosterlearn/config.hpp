#pragma once

// Flat key=value run configuration. Precedence: command-line flags, then
// ROSTERLEARN_<KEY> environment variables, then the file, then defaults.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rosterlearn/errors.hpp"
#include "rosterlearn/rational.hpp"
#include "rosterlearn/text.hpp"

namespace rosterlearn {

struct RunConfig {
    std::string rosters_dir = "rosters";
    std::string requests_dir = "requests";
    std::string demand_file;
    std::string mapping_file;
    std::string manual_constraints_file;
    std::string evaluation_file;
    std::string output_dir = "out";

    int n_min = 2;
    int n_max = 7;
    Rational tau_u = Rational(5, 4);
    Rational tau_c = Rational(3, 20);
    Rational tau_f = Rational(1, 2);
    double time_budget = 60.0;
    std::uint64_t seed = 1;
    bool exclusion = true;
    int t3_slack = 1;
    int t4_slack_lower = 1;
    int t4_slack_upper = 1;
    int jobs = 1;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline constexpr std::string_view kEnvPrefix = "ROSTERLEARN_";

namespace detail {

struct ConfigField {
    std::string key;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

inline int config_int(const std::string& key, const std::string& v) {
    auto n = text::to_int(v);
    if (!n) throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return static_cast<int>(*n);
}

inline std::string format_double(double v) {
    std::ostringstream o;
    o << v;
    return o.str();
}

inline const std::vector<ConfigField>& config_fields() {
    static const std::vector<ConfigField> fields = [] {
        std::vector<ConfigField> f;
        auto str = [&](const char* key, std::string RunConfig::*member) {
            f.push_back({key, [member](RunConfig& c, const std::string& v) { c.*member = v; },
                         [member](const RunConfig& c) { return c.*member; }});
        };
        auto integer = [&](const char* key, int RunConfig::*member) {
            f.push_back({key, [member, key](RunConfig& c, const std::string& v) { c.*member = config_int(key, v); },
                         [member](const RunConfig& c) { return std::to_string(c.*member); }});
        };
        auto rational = [&](const char* key, Rational RunConfig::*member) {
            f.push_back({key, [member](RunConfig& c, const std::string& v) { c.*member = parse_rational(v); },
                         [member](const RunConfig& c) { return format_rational(c.*member); }});
        };
        str("rosters_dir", &RunConfig::rosters_dir);
        str("requests_dir", &RunConfig::requests_dir);
        str("demand_file", &RunConfig::demand_file);
        str("mapping_file", &RunConfig::mapping_file);
        str("manual_constraints_file", &RunConfig::manual_constraints_file);
        str("evaluation_file", &RunConfig::evaluation_file);
        str("output_dir", &RunConfig::output_dir);
        integer("n_min", &RunConfig::n_min);
        integer("n_max", &RunConfig::n_max);
        rational("tau_u", &RunConfig::tau_u);
        rational("tau_c", &RunConfig::tau_c);
        rational("tau_f", &RunConfig::tau_f);
        f.push_back({"time_budget",
                     [](RunConfig& c, const std::string& v) {
                         char* end = nullptr;
                         double d = std::strtod(v.c_str(), &end);
                         if (v.empty() || *end != '\0' || !(d > 0)) throw ConfigError("time_budget: expected positive seconds, got '" + v + "'");
                         c.time_budget = d;
                     },
                     [](const RunConfig& c) { return format_double(c.time_budget); }});
        f.push_back({"seed",
                     [](RunConfig& c, const std::string& v) {
                         auto n = text::to_int(v);
                         if (!n || *n < 0) throw ConfigError("seed: expected a non-negative integer, got '" + v + "'");
                         c.seed = static_cast<std::uint64_t>(*n);
                     },
                     [](const RunConfig& c) { return std::to_string(c.seed); }});
        f.push_back({"exclusion",
                     [](RunConfig& c, const std::string& v) {
                         if (v == "true" || v == "1" || v == "yes") {
                             c.exclusion = true;
                         } else if (v == "false" || v == "0" || v == "no") {
                             c.exclusion = false;
                         } else {
                             throw ConfigError("exclusion: expected true/false, got '" + v + "'");
                         }
                     },
                     [](const RunConfig& c) { return std::string(c.exclusion ? "true" : "false"); }});
        integer("t3_slack", &RunConfig::t3_slack);
        integer("t4_slack_lower", &RunConfig::t4_slack_lower);
        integer("t4_slack_upper", &RunConfig::t4_slack_upper);
        integer("jobs", &RunConfig::jobs);
        return f;
    }();
    return fields;
}

}  // namespace detail

inline void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& f : detail::config_fields()) {
        if (f.key == key) {
            f.set(cfg, value);
            return;
        }
    }
    throw ConfigError("unknown configuration key '" + key + "'");
}

inline void validate(const RunConfig& cfg) {
    if (cfg.n_min < 2) throw ConfigError("n_min must be at least 2");
    if (cfg.n_max < cfg.n_min) throw ConfigError("n_max must not be below n_min");
    if (cfg.n_max > 8) throw ConfigError("n_max above 8 is not supported");
    if (cfg.tau_c < 0 || cfg.tau_u < 0) throw ConfigError("thresholds must be non-negative");
    if (cfg.t3_slack < 0 || cfg.t4_slack_lower < 0 || cfg.t4_slack_upper < 0) throw ConfigError("slack must be non-negative");
    if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
}

inline void apply_config_text(RunConfig& cfg, std::istream& in) {
    for (const auto& line : text::content_lines(in)) {
        auto eq = line.text.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line.row) + ": expected key=value");
        std::string key(text::trim(std::string_view(line.text).substr(0, eq)));
        std::string value(text::trim(std::string_view(line.text).substr(eq + 1)));
        try {
            set_config_value(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line.row) + ": " + e.what());
        }
    }
}

// Applies ROSTERLEARN_<KEY> overrides using the given lookup (getenv by default).
inline void apply_environment(RunConfig& cfg, const std::function<const char*(const char*)>& lookup = [](const char* k) {
    return std::getenv(k);
}) {
    for (const auto& f : detail::config_fields()) {
        std::string name(kEnvPrefix);
        for (char ch : f.key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (const char* v = lookup(name.c_str())) f.set(cfg, v);
    }
}

// File (optional) then environment; flags are applied by the caller afterwards.
inline RunConfig load_config(const std::string& path,
                             const std::function<const char*(const char*)>& env = [](const char* k) { return std::getenv(k); }) {
    RunConfig cfg;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot read config file " + path);
        apply_config_text(cfg, in);
    }
    apply_environment(cfg, env);
    return cfg;
}

inline std::string render_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& f : detail::config_fields()) out += f.key + "=" + f.get(cfg) + "\n";
    return out;
}

}  // namespace rosterlearn
