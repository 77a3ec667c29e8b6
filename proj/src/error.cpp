#include "vixsmile/error.hpp"

namespace vixsmile {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::Tolerance: return "tolerance";
        case ErrorCode::OutOfBounds: return "out_of_bounds";
        case ErrorCode::Convergence: return "convergence";
        case ErrorCode::NotPositiveDefinite: return "not_positive_definite";
        case ErrorCode::Degenerate: return "degenerate";
        case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace vixsmile
