#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rosterlearn/calendar.hpp"
#include "rosterlearn/errors.hpp"
#include "rosterlearn/shift.hpp"
#include "rosterlearn/text.hpp"

namespace rosterlearn {

using StaffId = std::string;

// One month of assignments: staff x day -> shift symbol. Immutable once built.
class Roster {
public:
    Roster() = default;

    // Rows cover days 1..width of the month; width defaults to the whole month
    // and may be shorter for a planning horizon.
    Roster(MonthId month, std::vector<StaffId> staff, std::vector<std::vector<ShiftSymbol>> rows, int width = 0)
        : month_(month), staff_(std::move(staff)), rows_(std::move(rows)), days_(width ? width : month.last_day()) {
        if (days_ < 1 || days_ > month_.last_day()) {
            throw DataError("horizon of " + std::to_string(days_) + " days does not fit " + month_.to_string());
        }
        if (rows_.size() != staff_.size()) throw DataError("roster has " + std::to_string(staff_.size()) +
                                                           " staff but " + std::to_string(rows_.size()) + " rows");
        std::set<StaffId> seen;
        for (std::size_t i = 0; i < staff_.size(); ++i) {
            if (!seen.insert(staff_[i]).second) throw DataError("duplicate staff id " + staff_[i]);
            if (rows_[i].size() != static_cast<std::size_t>(days_)) {
                throw DataError("row for " + staff_[i] + " has " + std::to_string(rows_[i].size()) + " days, expected " +
                                std::to_string(days_) + " for " + month_.to_string());
            }
        }
    }

    // Every cell set to `fill`.
    static Roster constant(MonthId month, std::vector<StaffId> staff, const ShiftSymbol& fill, int width = 0) {
        const int days = width ? width : month.last_day();
        std::vector<std::vector<ShiftSymbol>> rows(staff.size(), std::vector<ShiftSymbol>(static_cast<std::size_t>(days), fill));
        return Roster(month, std::move(staff), std::move(rows), days);
    }

    MonthId month() const noexcept { return month_; }
    int days() const noexcept { return days_; }
    const std::vector<StaffId>& staff() const noexcept { return staff_; }

    std::optional<std::size_t> index_of(const StaffId& id) const {
        auto it = std::find(staff_.begin(), staff_.end(), id);
        if (it == staff_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - staff_.begin());
    }

    // day is 1-based.
    const ShiftSymbol& at(std::size_t staff_index, int day) const {
        return rows_.at(staff_index).at(static_cast<std::size_t>(day - 1));
    }

    std::span<const ShiftSymbol> row(std::size_t staff_index) const { return rows_.at(staff_index); }

    friend bool operator==(const Roster& a, const Roster& b) {
        return a.month_ == b.month_ && a.staff_ == b.staff_ && a.rows_ == b.rows_;
    }

private:
    MonthId month_;
    std::vector<StaffId> staff_;
    std::vector<std::vector<ShiftSymbol>> rows_;
    int days_ = 0;
};

// Header "staff,1,2,...,last_day"; one row per staff; cells are shift codes.
inline Roster parse_roster(std::istream& in, MonthId month, const ShiftAlphabet& alphabet) {
    auto lines = text::content_lines(in);
    if (lines.empty()) throw ParseError("roster file is empty", 1, 1);
    const int width = month.last_day();
    auto header = text::split(lines.front().text);
    if (header.size() != static_cast<std::size_t>(width) + 1) {
        throw ParseError("header lists " + std::to_string(header.size() - 1) + " days, " + month.to_string() + " has " +
                             std::to_string(width),
                         lines.front().row, header.size());
    }
    for (int d = 1; d <= width; ++d) {
        auto v = text::to_int(header[static_cast<std::size_t>(d)]);
        if (!v || *v != d) {
            throw ParseError("header column should be day " + std::to_string(d), lines.front().row,
                             static_cast<std::size_t>(d) + 1);
        }
    }
    std::vector<StaffId> staff;
    std::vector<std::vector<ShiftSymbol>> rows;
    std::set<StaffId> seen;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        auto cells = text::split(line.text);
        if (cells.size() != header.size()) {
            throw ParseError("ragged row: " + std::to_string(cells.size()) + " fields, expected " +
                                 std::to_string(header.size()),
                             line.row, std::min(cells.size(), header.size()) + 1);
        }
        if (cells[0].empty()) throw ParseError("empty staff id", line.row, 1);
        if (!seen.insert(cells[0]).second) throw ParseError("duplicate staff id " + cells[0], line.row, 1);
        std::vector<ShiftSymbol> row;
        row.reserve(static_cast<std::size_t>(width));
        for (int d = 1; d <= width; ++d) {
            const auto& code = cells[static_cast<std::size_t>(d)];
            auto col = static_cast<std::size_t>(d) + 1;
            if (code.empty()) {
                throw ParseError("empty cell for staff " + cells[0] + " day " + std::to_string(d) + " (use '-' for off)",
                                 line.row, col);
            }
            auto sym = alphabet.find(code);
            if (!sym) {
                throw ParseError("unknown shift code '" + code + "' for staff " + cells[0] + " day " + std::to_string(d),
                                 line.row, col);
            }
            row.push_back(*sym);
        }
        staff.push_back(cells[0]);
        rows.push_back(std::move(row));
    }
    return Roster(month, std::move(staff), std::move(rows));
}

inline Roster parse_roster(const std::string& csv, MonthId month, const ShiftAlphabet& alphabet) {
    std::istringstream in(csv);
    return parse_roster(in, month, alphabet);
}

inline std::string render_roster(const Roster& roster) {
    std::string out = "staff";
    for (int d = 1; d <= roster.days(); ++d) out += "," + std::to_string(d);
    out += "\n";
    for (std::size_t i = 0; i < roster.staff().size(); ++i) {
        out += roster.staff()[i];
        for (const auto& s : roster.row(i)) out += "," + s.code();
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Requests

struct Request {
    StaffId staff;
    int day = 0;
    ShiftSymbol symbol;

    bool is_leave() const { return symbol.is_off(); }
    friend bool operator==(const Request&, const Request&) = default;
};

class RequestSet {
public:
    RequestSet() = default;

    RequestSet(MonthId month, std::vector<Request> entries) : month_(month), entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(), [](const Request& a, const Request& b) {
            return std::tie(a.staff, a.day) < std::tie(b.staff, b.day);
        });
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& r = entries_[i];
            if (r.day < 1 || r.day > month_.last_day()) {
                throw DataError("request day " + std::to_string(r.day) + " for " + r.staff + " outside " +
                                month_.to_string());
            }
            if (i > 0 && entries_[i - 1].staff == r.staff && entries_[i - 1].day == r.day) {
                throw DataError("duplicate request for staff " + r.staff + " day " + std::to_string(r.day));
            }
        }
    }

    MonthId month() const noexcept { return month_; }
    const std::vector<Request>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }

    int leave_count(const StaffId& staff) const {
        return static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                              [&](const Request& r) { return r.staff == staff && r.is_leave(); }));
    }

    int leave_on(int day) const {
        return static_cast<int>(
            std::count_if(entries_.begin(), entries_.end(), [&](const Request& r) { return r.day == day && r.is_leave(); }));
    }

    const Request* find(const StaffId& staff, int day) const {
        for (const auto& r : entries_) {
            if (r.staff == staff && r.day == day) return &r;
        }
        return nullptr;
    }

private:
    MonthId month_;
    std::vector<Request> entries_;
};

// Header "staff,day,symbol". "day off" and "paid off" are accepted as Off.
inline RequestSet parse_requests(std::istream& in, MonthId month, const ShiftAlphabet& alphabet) {
    auto lines = text::content_lines(in);
    std::vector<Request> entries;
    std::set<std::pair<StaffId, int>> seen;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto& line = lines[li];
        std::string body = line.text;
        if (body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
        auto f = text::split(body);
        if (li == 0 && f.size() == 3 && f[0] == "staff" && f[1] == "day") continue;
        if (f.size() != 3) throw ParseError("request rows need staff,day,symbol", line.row, f.size());
        auto day = text::to_int(f[1]);
        if (!day) throw ParseError("request day is not an integer: '" + f[1] + "'", line.row, 2);
        if (*day < 1 || *day > month.last_day()) {
            throw ParseError("request day " + f[1] + " outside " + month.to_string(), line.row, 2);
        }
        std::optional<ShiftSymbol> sym;
        if (f[2] == "day off" || f[2] == "paid off") {
            sym = ShiftSymbol::off();
        } else {
            sym = alphabet.find(f[2]);
        }
        if (!sym) throw ParseError("unknown requested shift '" + f[2] + "'", line.row, 3);
        if (!seen.insert({f[0], static_cast<int>(*day)}).second) {
            throw ParseError("duplicate request for staff " + f[0] + " day " + f[1], line.row, 1);
        }
        entries.push_back({f[0], static_cast<int>(*day), *sym});
    }
    return RequestSet(month, std::move(entries));
}

inline RequestSet parse_requests(const std::string& csv, MonthId month, const ShiftAlphabet& alphabet) {
    std::istringstream in(csv);
    return parse_requests(in, month, alphabet);
}

inline std::string render_requests(const RequestSet& requests) {
    std::string out = "staff,day,symbol\n";
    for (const auto& r : requests.entries()) out += r.staff + "," + std::to_string(r.day) + "," + r.symbol.code() + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Demand

// Required headcount per (weekday, shift).
class DemandTable {
public:
    void set(Weekday w, const std::string& shift, int count) {
        if (count < 0) throw DataError("negative demand for " + shift);
        rows_[{w, shift}] = count;
    }

    int required(Weekday w, const std::string& shift) const {
        auto it = rows_.find({w, shift});
        return it == rows_.end() ? 0 : it->second;
    }

    // r_d for a day falling on w.
    int total(Weekday w) const {
        int t = 0;
        for (const auto& [key, count] : rows_) {
            if (key.first == w) t += count;
        }
        return t;
    }

    bool covers(Weekday w) const { return total(w) >= 1; }
    bool empty() const noexcept { return rows_.empty(); }
    const std::map<std::pair<Weekday, std::string>, int>& rows() const noexcept { return rows_; }

    friend bool operator==(const DemandTable&, const DemandTable&) = default;

private:
    std::map<std::pair<Weekday, std::string>, int> rows_;
};

inline DemandTable parse_demand(std::istream& in) {
    DemandTable table;
    auto lines = text::content_lines(in);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        auto f = text::split(lines[li].text);
        if (li == 0 && f.size() == 3 && f[0] == "weekday") continue;
        if (f.size() != 3) throw ParseError("demand rows need weekday,shift,count", lines[li].row, f.size());
        std::string wd = f[0];
        if (wd.size() >= 2 && wd.front() == '"' && wd.back() == '"') wd = wd.substr(1, wd.size() - 2);
        auto w = parse_weekday(wd);
        if (!w) throw ParseError("unknown weekday '" + f[0] + "'", lines[li].row, 1);
        auto c = text::to_int(f[2]);
        if (!c || *c < 0) throw ParseError("demand count must be a non-negative integer", lines[li].row, 3);
        table.set(*w, f[1], static_cast<int>(*c));
    }
    return table;
}

inline DemandTable parse_demand(const std::string& csv) {
    std::istringstream in(csv);
    return parse_demand(in);
}

inline std::string render_demand(const DemandTable& table) {
    std::string out = "weekday,shift,count\n";
    for (Weekday w : kAllWeekdays) {
        for (const auto& [key, count] : table.rows()) {
            if (key.first == w) out += std::string(weekday_token(w)) + "," + key.second + "," + std::to_string(count) + "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Detailed -> abstract shift mapping

class ShiftMapping {
public:
    void add(const std::string& detailed, const ShiftSymbol& abstract) { map_[detailed] = abstract; }

    // Two units, day shifts A-E per unit collapse to D, Ni/No collapse to the
    // unit's night symbol, both kinds of leave collapse to "-". Abstract
    // symbols map to themselves so already-abstract rosters pass through.
    static ShiftMapping standard() {
        ShiftMapping m;
        m.add("day off", ShiftSymbol::off());
        m.add("paid off", ShiftSymbol::off());
        for (const char* unit : {"1", "2"}) {
            for (const char* letter : {"A", "B", "C", "D", "E"}) m.add(std::string(unit) + letter, ShiftSymbol::day());
            auto night = ShiftSymbol::night(std::string(unit) + "N", unit);
            m.add(std::string(unit) + "Ni", night);
            m.add(std::string(unit) + "No", night);
        }
        const auto abstract = ShiftAlphabet::standard();
        for (const auto& s : abstract.symbols()) m.add(s.code(), s);
        return m;
    }

    std::optional<ShiftSymbol> lookup(const std::string& detailed) const {
        auto it = map_.find(detailed);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    // Symbols a detailed roster may contain; each inherits the kind of its
    // abstract image.
    ShiftAlphabet detailed_alphabet() const {
        std::vector<ShiftSymbol> out;
        for (const auto& [code, abs] : map_) out.emplace_back(code, abs.kind(), abs.unit());
        return ShiftAlphabet(std::move(out));
    }

    // Distinct abstract symbols in first-seen order of the standard ordering
    // (Off first, then day, then nights by code).
    ShiftAlphabet abstract_alphabet() const {
        std::vector<ShiftSymbol> out;
        for (const auto& [code, abs] : map_) {
            if (std::find(out.begin(), out.end(), abs) == out.end()) out.push_back(abs);
        }
        std::sort(out.begin(), out.end(), [](const ShiftSymbol& a, const ShiftSymbol& b) {
            return std::make_pair(static_cast<int>(a.kind()), a.code()) < std::make_pair(static_cast<int>(b.kind()), b.code());
        });
        return ShiftAlphabet(std::move(out));
    }

    const std::map<std::string, ShiftSymbol>& entries() const noexcept { return map_; }

private:
    std::map<std::string, ShiftSymbol> map_;
};

// Two-column CSV "detailed,abstract".
inline ShiftMapping parse_mapping(std::istream& in) {
    ShiftMapping m;
    auto lines = text::content_lines(in);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        auto f = text::split(lines[li].text);
        if (li == 0 && f.size() == 2 && f[0] == "detailed" && f[1] == "abstract") continue;
        if (f.size() != 2 || f[0].empty() || f[1].empty()) {
            throw ParseError("mapping rows need detailed,abstract", lines[li].row, f.size());
        }
        m.add(f[0], ShiftSymbol::abstract(f[1]));
    }
    return m;
}

inline Roster abstract_roster(const Roster& detailed, const ShiftMapping& mapping) {
    std::vector<std::vector<ShiftSymbol>> rows;
    rows.reserve(detailed.staff().size());
    for (std::size_t i = 0; i < detailed.staff().size(); ++i) {
        std::vector<ShiftSymbol> row;
        for (int d = 1; d <= detailed.days(); ++d) {
            const auto& code = detailed.at(i, d).code();
            auto abs = mapping.lookup(code);
            if (!abs) {
                throw DataError("unmapped shift code '" + code + "' for staff " + detailed.staff()[i] + " day " +
                                std::to_string(d));
            }
            row.push_back(*abs);
        }
        rows.push_back(std::move(row));
    }
    return Roster(detailed.month(), detailed.staff(), std::move(rows), detailed.days());
}

}  // namespace rosterlearn
