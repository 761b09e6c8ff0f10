#pragma once

// Line format for mined constraints:
//   T1  (10005, -, D)
//   T2  (-, D)
//   T3  (10006, D, 1, 31, 15, 15)
//   T4  ("Mon.", D, 9)        equal bounds
//       ("Mon.", D, 8, 9)     differing bounds
// A file groups lines under [T1] .. [T4] section headers.

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "rosterlearn/templates.hpp"

namespace rosterlearn {

inline std::string format_mined(const MinedConstraint& c) {
    std::vector<std::string> parts;
    if (c.template_id == "T4") {
        parts.push_back("\"" + std::string(weekday_token(c.key.weekday.value())) + "\"");
        parts.push_back(c.key.shifts.at(0));
        if (c.lower() == c.upper()) {
            parts.push_back(std::to_string(c.lower()));
        } else {
            parts.push_back(std::to_string(c.lower()));
            parts.push_back(std::to_string(c.upper()));
        }
    } else if (c.template_id == "T3") {
        parts.push_back(c.key.staff.value());
        parts.push_back(c.key.shifts.at(0));
        parts.push_back("1");
        parts.push_back(std::to_string(c.period_last_day));
        parts.push_back(std::to_string(c.lower()));
        parts.push_back(std::to_string(c.upper()));
    } else {
        if (c.key.staff) parts.push_back(*c.key.staff);
        for (const auto& s : c.key.shifts) parts.push_back(s);
    }
    return "(" + text::join(parts, ", ") + ")";
}

namespace detail {

inline std::vector<std::string> tuple_fields(std::string_view line) {
    auto t = text::trim(line);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
        throw DataError("constraint must be a parenthesised tuple: '" + std::string(line) + "'");
    }
    auto fields = text::split(t.substr(1, t.size() - 2));
    for (auto& f : fields) {
        if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
        if (f.empty()) throw DataError("empty field in '" + std::string(line) + "'");
    }
    return fields;
}

inline std::int64_t int_field(const std::string& f, std::string_view line) {
    auto v = text::to_int(f);
    if (!v) throw DataError("expected an integer, got '" + f + "' in '" + std::string(line) + "'");
    return *v;
}

}  // namespace detail

inline MinedConstraint parse_mined(const std::string& template_id, std::string_view line) {
    auto f = detail::tuple_fields(line);
    MinedConstraint c;
    c.template_id = template_id;
    if (template_id == "T1" || template_id == "T2") {
        std::size_t first = template_id == "T1" ? 1 : 0;
        if (f.size() < first + 2) throw DataError(template_id + " pattern needs at least 2 shifts: '" + std::string(line) + "'");
        if (first) c.key.staff = f[0];
        c.key.shifts.assign(f.begin() + static_cast<std::ptrdiff_t>(first), f.end());
        c.duration = static_cast<int>(c.key.shifts.size());
    } else if (template_id == "T3") {
        if (f.size() != 6) throw DataError("T3 line needs 6 fields: '" + std::string(line) + "'");
        c.duration = kMonthDuration;
        c.key.staff = f[0];
        c.key.shifts = {f[1]};
        c.period_last_day = static_cast<int>(detail::int_field(f[3], line));
        c.bounds = std::make_pair(detail::int_field(f[4], line), detail::int_field(f[5], line));
    } else if (template_id == "T4") {
        if (f.size() != 3 && f.size() != 4) throw DataError("T4 line needs 3 or 4 fields: '" + std::string(line) + "'");
        c.duration = 1;
        auto w = parse_weekday(f[0]);
        if (!w) throw DataError("unknown weekday '" + f[0] + "'");
        c.key.weekday = *w;
        c.key.shifts = {f[1]};
        auto lo = detail::int_field(f[2], line);
        auto hi = f.size() == 4 ? detail::int_field(f[3], line) : lo;
        c.bounds = std::make_pair(lo, hi);
    } else {
        throw DataError("unknown template id '" + template_id + "'");
    }
    if (c.bounds && c.lower() > c.upper()) throw DataError("lower bound above upper in '" + std::string(line) + "'");
    return c;
}

inline std::string render_mined_file(const std::vector<MinedConstraint>& mined) {
    std::string out;
    std::string section;
    for (const auto& id : {"T1", "T2", "T3", "T4"}) {
        bool header = false;
        for (const auto& c : mined) {
            if (c.template_id != id) continue;
            if (!header) {
                out += std::string("[") + id + "]\n";
                header = true;
            }
            out += format_mined(c) + "\n";
        }
    }
    return out;
}

inline std::vector<MinedConstraint> parse_mined_file(std::istream& in) {
    std::vector<MinedConstraint> out;
    std::string section;
    for (const auto& line : text::content_lines(in)) {
        if (line.text.front() == '[') {
            if (line.text.back() != ']') throw ParseError("bad section header", line.row, 1);
            section = line.text.substr(1, line.text.size() - 2);
            continue;
        }
        if (section.empty()) throw ParseError("constraint before any [T*] section", line.row, 1);
        try {
            out.push_back(parse_mined(section, line.text));
        } catch (const ParseError&) {
            throw;
        } catch (const DataError& e) {
            throw ParseError(e.what(), line.row, 1);
        }
    }
    return out;
}

inline std::vector<MinedConstraint> parse_mined_file(const std::string& content) {
    std::istringstream in(content);
    return parse_mined_file(in);
}

// Hand-written constraint: "hard|T3|(10006, *, 1, 31, 20, 22)" or
// "soft:2|T1|(10005, -, D)". Shift "*" in a T3 body counts every working shift.
struct ManualConstraint {
    bool hard = true;
    int weight = 1;
    MinedConstraint body;
};

inline std::vector<ManualConstraint> parse_manual_file(std::istream& in) {
    std::vector<ManualConstraint> out;
    for (const auto& line : text::content_lines(in)) {
        auto bar1 = line.text.find('|');
        auto bar2 = bar1 == std::string::npos ? bar1 : line.text.find('|', bar1 + 1);
        if (bar2 == std::string::npos) throw ParseError("expected hardness|template|body", line.row, 1);
        ManualConstraint m;
        std::string hardness(text::trim(std::string_view(line.text).substr(0, bar1)));
        if (hardness == "hard") {
            m.hard = true;
        } else if (hardness.rfind("soft", 0) == 0) {
            m.hard = false;
            if (hardness.size() > 4) {
                auto w = hardness[4] == ':' ? text::to_int(std::string_view(hardness).substr(5)) : std::nullopt;
                if (!w || *w < 1) throw ParseError("soft weight must be a positive integer", line.row, 1);
                m.weight = static_cast<int>(*w);
            }
        } else {
            throw ParseError("hardness must be 'hard' or 'soft[:w]', got '" + hardness + "'", line.row, 1);
        }
        std::string tid(text::trim(std::string_view(line.text).substr(bar1 + 1, bar2 - bar1 - 1)));
        try {
            m.body = parse_mined(tid, std::string_view(line.text).substr(bar2 + 1));
        } catch (const ParseError&) {
            throw;
        } catch (const DataError& e) {
            throw ParseError(e.what(), line.row, bar2 + 2);
        }
        out.push_back(std::move(m));
    }
    return out;
}

inline std::vector<ManualConstraint> parse_manual_file(const std::string& content) {
    std::istringstream in(content);
    return parse_manual_file(in);
}

inline std::string format_manual(const ManualConstraint& m) {
    std::string h = m.hard ? "hard" : (m.weight == 1 ? "soft" : "soft:" + std::to_string(m.weight));
    return h + "|" + m.body.template_id + "|" + format_mined(m.body);
}

}  // namespace rosterlearn
