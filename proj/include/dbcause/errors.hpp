#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dbcause {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based position of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed syntax with invalid meaning: arity conflicts, unsafe rules,
/// invalid priorities, violated operation preconditions.
class SemanticError : public Error {
public:
    using Error::Error;
};

/// An enumeration (hitting sets, repairs, oracle subset scans) exceeded its cap.
class EnumerationCapError : public Error {
public:
    using Error::Error;
};

}  // namespace dbcause
