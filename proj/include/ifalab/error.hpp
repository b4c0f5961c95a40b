#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ifalab {

enum class ErrorCode {
    precondition,
    range,
    capacity,
    degenerate_series,
    unreadable_file,
    no_valid_rows,
    non_numeric,
    parse,
    usage,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` is what the CLI reports.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw Error(ErrorCode::precondition, message);
}

}  // namespace ifalab
