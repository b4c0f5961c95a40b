#include "ifalab/error.hpp"

namespace ifalab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::range: return "range";
        case ErrorCode::capacity: return "capacity";
        case ErrorCode::degenerate_series: return "degenerate_series";
        case ErrorCode::unreadable_file: return "unreadable_file";
        case ErrorCode::no_valid_rows: return "no_valid_rows";
        case ErrorCode::non_numeric: return "non_numeric";
        case ErrorCode::parse: return "parse";
        case ErrorCode::usage: return "usage";
    }
    return "unknown";
}

}  // namespace ifalab
