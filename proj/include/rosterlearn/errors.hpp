#pragma once

#include <stdexcept>
#include <string>

namespace rosterlearn {

// Base for every error the library reports to callers.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (rosters, requests, constraint files).
class DataError : public Error {
public:
    using Error::Error;
};

// Parse failure with a row/column location inside a text stream.
class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : DataError(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
          row_(row),
          column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

// Missing or contradictory configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A template combination Collect has no branch for.
class UnsupportedTemplate : public Error {
public:
    using Error::Error;
};

}  // namespace rosterlearn
