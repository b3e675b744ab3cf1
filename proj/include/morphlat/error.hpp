#pragma once

#include <stdexcept>
#include <string>

namespace morphlat {

enum class ErrorCode {
    EmptySet,
    DimensionMismatch,
    NonFiniteValue,
    OutsideOrderSupport,
    EmptyWindow,
    PartialOrder,
    ShapeMismatch,
    InvalidArgument,
    UnsupportedFormat,
    Io,
    SolverFailure,
};

/// Single exception type for the library; `code()` distinguishes the cause.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace morphlat
