#include "rdslab/error.hpp"

namespace rdslab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::grid_alignment:
        return "grid_alignment";
    case ErrorCode::out_of_window:
        return "out_of_window";
    case ErrorCode::precondition:
        return "precondition";
    case ErrorCode::unsupported:
        return "unsupported";
    case ErrorCode::usage:
        return "usage";
    }
    return "unknown";
}

} // namespace rdslab
