#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "rosterlearn/errors.hpp"
#include "rosterlearn/text.hpp"

namespace rosterlearn {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_of(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

inline std::int64_t ceil_of(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

// Exact decimal parse: "0.15" -> 3/20, "1.25" -> 5/4, "-2" -> -2, "7/4" -> 7/4.
inline Rational parse_rational(std::string_view raw) {
    auto s = text::trim(raw);
    auto fail = [&] { return ConfigError("not a decimal number: '" + std::string(raw) + "'"); };
    if (s.empty()) throw fail();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto n = text::to_int(s.substr(0, slash));
        auto d = text::to_int(s.substr(slash + 1));
        if (!n || !d || *d == 0) throw fail();
        return Rational(*n, *d);
    }
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::int64_t num = 0, den = 1;
    bool seen_dot = false, seen_digit = false;
    for (char c : s) {
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            seen_digit = true;
            num = num * 10 + (c - '0');
            if (seen_dot) den *= 10;
        } else {
            throw fail();
        }
    }
    if (!seen_digit) throw fail();
    return Rational(negative ? -num : num, den);
}

// Shortest exact rendering: integers plainly, terminating decimals as
// decimals, everything else as n/d.
inline std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    std::int64_t d = r.denominator();
    int twos = 0, fives = 0;
    while (d % 2 == 0) d /= 2, ++twos;
    while (d % 5 == 0) d /= 5, ++fives;
    if (d != 1) return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    int digits = twos > fives ? twos : fives;
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    std::int64_t scaled = r.numerator() * (scale / r.denominator());
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string whole = std::to_string(scaled / scale);
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    return (neg ? "-" : "") + whole + "." + frac;
}

}  // namespace rosterlearn
