#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rosterlearn/errors.hpp"

namespace rosterlearn {

enum class ShiftKind { Off, Day, Night };

// A shift code together with its kind. Night shifts carry the unit they
// belong to; identity is the code, the other fields are derived from it.
class ShiftSymbol {
public:
    ShiftSymbol() = default;

    ShiftSymbol(std::string code, ShiftKind kind, std::string unit = {})
        : code_(std::move(code)), kind_(kind), unit_(std::move(unit)) {
        if (code_.empty()) throw DataError("empty shift code");
        if (kind_ == ShiftKind::Night && unit_.empty()) {
            throw DataError("night shift '" + code_ + "' needs a unit label");
        }
        if (kind_ != ShiftKind::Night && !unit_.empty()) {
            throw DataError("only night shifts carry a unit label ('" + code_ + "')");
        }
    }

    static ShiftSymbol off() { return ShiftSymbol("-", ShiftKind::Off); }
    static ShiftSymbol day(std::string code = "D") { return ShiftSymbol(std::move(code), ShiftKind::Day); }
    static ShiftSymbol night(std::string code, std::string unit) {
        return ShiftSymbol(std::move(code), ShiftKind::Night, std::move(unit));
    }

    // Classifies an abstract code: "-" is Off, "<unit>N" is a night shift of
    // that unit, anything else is a day shift.
    static ShiftSymbol abstract(std::string_view code) {
        if (code == "-") return off();
        if (code.size() >= 2 && code.back() == 'N') {
            return night(std::string(code), std::string(code.substr(0, code.size() - 1)));
        }
        return day(std::string(code));
    }

    const std::string& code() const noexcept { return code_; }
    ShiftKind kind() const noexcept { return kind_; }
    const std::string& unit() const noexcept { return unit_; }
    bool is_off() const noexcept { return kind_ == ShiftKind::Off; }
    bool is_night() const noexcept { return kind_ == ShiftKind::Night; }

    friend bool operator==(const ShiftSymbol& a, const ShiftSymbol& b) { return a.code_ == b.code_; }
    friend std::strong_ordering operator<=>(const ShiftSymbol& a, const ShiftSymbol& b) { return a.code_ <=> b.code_; }

private:
    std::string code_ = "-";
    ShiftKind kind_ = ShiftKind::Off;
    std::string unit_;
};

// Ordered set of symbols a roster may use. Order matters: it is the symbol
// order the solver uses for tie-breaking.
class ShiftAlphabet {
public:
    ShiftAlphabet() = default;
    explicit ShiftAlphabet(std::vector<ShiftSymbol> symbols) : symbols_(std::move(symbols)) {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            for (std::size_t j = i + 1; j < symbols_.size(); ++j) {
                if (symbols_[i] == symbols_[j]) throw DataError("duplicate shift code '" + symbols_[i].code() + "'");
            }
        }
    }

    // {-, D, 1N, 2N}: the abstraction used for the two-unit facility.
    static ShiftAlphabet standard() {
        return ShiftAlphabet({ShiftSymbol::off(), ShiftSymbol::day(), ShiftSymbol::night("1N", "1"),
                              ShiftSymbol::night("2N", "2")});
    }

    const std::vector<ShiftSymbol>& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }

    std::optional<ShiftSymbol> find(std::string_view code) const {
        for (const auto& s : symbols_) {
            if (s.code() == code) return s;
        }
        return std::nullopt;
    }

    std::optional<std::size_t> index_of(std::string_view code) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i].code() == code) return i;
        }
        return std::nullopt;
    }

    bool contains(std::string_view code) const { return index_of(code).has_value(); }

    std::vector<ShiftSymbol> working() const {
        std::vector<ShiftSymbol> out;
        std::copy_if(symbols_.begin(), symbols_.end(), std::back_inserter(out),
                     [](const ShiftSymbol& s) { return !s.is_off(); });
        return out;
    }

private:
    std::vector<ShiftSymbol> symbols_;
};

}  // namespace rosterlearn
