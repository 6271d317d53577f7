#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdslab {

enum class ErrorCode {
    grid_alignment,  // a time or window that does not sit on the step grid
    out_of_window,   // evaluation or integration outside the noise window
    precondition,    // an argument outside the documented domain
    unsupported,     // the system cannot provide the requested capability
    usage,           // command-line misuse
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library error. `code()` is stable and is what the CLI prints first.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace rdslab
