#pragma once

#include <stdexcept>
#include <string>

namespace elg {

enum class ErrorCode {
    InvalidSpin,
    InvalidArgument,
    UnsupportedArity,
    InconsistentDimensions,
    InconsistentMarginals,
    SizeLimitExceeded,
    DegenerateTable,
};

/// Exception type thrown by every precondition check in the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace elg
