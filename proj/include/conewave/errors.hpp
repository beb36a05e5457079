#pragma once

#include <stdexcept>
#include <string>

namespace conewave {

// Error taxonomy shared by all modules. CLI maps these onto exit codes:
// parse/validation -> 2, numerical -> 3.
enum class ErrorCode {
    NonPositiveAxis,
    ZeroVector,
    OutsideCone,
    DegenerateDirection,
    DegenerateTangent,
    DegenerateSpacing,
    DomainEdge,
    SingularMetric,
    BadInitialSpeed,
    StrongWindUnsupported,
    EmptyContour,
    GridTooCoarse,
    ParseError,
    ValidationError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Text position is 1-based; for single-line expressions line is always 1.
class ParseError : public Error {
public:
    ParseError(std::string message, int line, int column)
        : Error(ErrorCode::ParseError, std::move(message)), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, std::string message)
        : Error(ErrorCode::ValidationError, std::move(message)), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

} // namespace conewave
