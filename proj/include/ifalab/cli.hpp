#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ifalab {

inline constexpr const char* tool_version = "0.1.0";

/// Runs one `ifa_lab` invocation (arguments after the program name).
/// Returns 0 on success, 1 on a runtime error, 2 on a usage error; errors
/// print one `error: code=<code> message=<text>` line to `err`.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ifalab
