#pragma once

#include <stdexcept>
#include <string>

namespace vixsmile {

enum class ErrorCode {
    InvalidArgument,
    Domain,
    Tolerance,
    OutOfBounds,
    Convergence,
    NotPositiveDefinite,
    Degenerate,
    Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by adaptive quadrature when the requested tolerance cannot be met.
/// Carries the best estimate so callers may decide to accept it.
class ToleranceError : public Error {
public:
    ToleranceError(const std::string& message, double best_estimate, double error_bound)
        : Error(ErrorCode::Tolerance, message),
          best_estimate_(best_estimate),
          error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) {
        throw Error(code, message);
    }
}

}  // namespace vixsmile
