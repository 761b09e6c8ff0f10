#pragma once

#include <array>
#include <chrono>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "rosterlearn/errors.hpp"

namespace rosterlearn {

enum class Weekday : int { Sun = 0, Mon, Tue, Wed, Thu, Fri, Sat };

inline constexpr std::array<Weekday, 7> kAllWeekdays = {Weekday::Sun, Weekday::Mon, Weekday::Tue, Weekday::Wed,
                                                        Weekday::Thu, Weekday::Fri, Weekday::Sat};

// Tokens as they appear in demand files and T4 output: "Sun." .. "Sat."
inline std::string_view weekday_token(Weekday w) {
    static constexpr std::array<std::string_view, 7> names = {"Sun.", "Mon.", "Tue.", "Wed.", "Thu.", "Fri.", "Sat."};
    return names[static_cast<int>(w)];
}

inline std::optional<Weekday> parse_weekday(std::string_view token) {
    for (Weekday w : kAllWeekdays) {
        std::string_view name = weekday_token(w);
        if (token == name || token == name.substr(0, 3)) return w;
    }
    return std::nullopt;
}

class MonthId {
public:
    constexpr MonthId() = default;
    MonthId(int year, int month) : year_(year), month_(month) {
        if (month < 1 || month > 12) throw DataError("month out of range: " + std::to_string(month));
    }

    int year() const noexcept { return year_; }
    int month() const noexcept { return month_; }

    int last_day() const {
        namespace ch = std::chrono;
        ch::year_month_day_last last{ch::year{year_}, ch::month_day_last{ch::month{static_cast<unsigned>(month_)}}};
        return static_cast<int>(static_cast<unsigned>(last.day()));
    }

    Weekday weekday(int day) const {
        if (day < 1 || day > last_day()) {
            throw DataError("day " + std::to_string(day) + " outside " + to_string());
        }
        namespace ch = std::chrono;
        ch::year_month_day ymd{ch::year{year_}, ch::month{static_cast<unsigned>(month_)}, ch::day{static_cast<unsigned>(day)}};
        return static_cast<Weekday>(ch::weekday{ch::sys_days{ymd}}.c_encoding());
    }

    // Number of days in this month falling on weekday w (4 or 5).
    int occurrences(Weekday w) const {
        int n = 0;
        for (int d = 1; d <= last_day(); ++d) n += weekday(d) == w ? 1 : 0;
        return n;
    }

    MonthId next() const { return month_ == 12 ? MonthId(year_ + 1, 1) : MonthId(year_, month_ + 1); }

    // "YYYY-MM"
    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d", year_, month_);
        return buf;
    }

    static MonthId parse(std::string_view text) {
        int y = 0, m = 0;
        std::string s(text);
        char dash = 0;
        if (std::sscanf(s.c_str(), "%d%c%d", &y, &dash, &m) != 3 || dash != '-') {
            throw DataError("malformed month id '" + s + "', expected YYYY-MM");
        }
        return MonthId(y, m);
    }

    friend auto operator<=>(const MonthId&, const MonthId&) = default;

private:
    int year_ = 2000;
    int month_ = 1;
};

}  // namespace rosterlearn
