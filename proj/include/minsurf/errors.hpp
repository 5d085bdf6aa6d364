#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace minsurf {

enum class ErrorKind {
    EvaluationSingularity,
    SingularPath,
    NoConvergence,
    ParseError,
    DimensionMismatch,
    InvalidArgument,
    InvalidConstant,
    InvalidBasePoint,
    ZeroVector,
    DegenerateInput,
    IllConditioned,
    NotPlanar,
    DegenerateConic,
    NotHyperbola,
    AxisNotMonotone,
    IOError,
    InvalidSpec,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error thrown by the library. The kind is stable and is what
/// the CLI serializes into its error JSON.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error(ErrorKind::ParseError, message + " at byte " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace minsurf
