#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace huto {

enum class ErrorCode {
    EmptyDate,
    InvalidYear,
    InvalidDate,
    InvalidDuration,
    InvalidArgument,
    Underspecified,
    NotDeictic,
    MalformedTriple,
    ParseError,
    UnknownPrefix,
    RuleDivergence,
    NotConvexlyDated,
    RangeTooLarge,
    NotNormalized,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure reported by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Syntax error in Turtle/TriG input; line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, const std::string& message, std::size_t line, std::size_t column)
        : Error(code, message), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace huto
