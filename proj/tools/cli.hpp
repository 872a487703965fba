#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pyra::cli {

inline constexpr const char* version = "1.0.0";
inline constexpr int manifest_format_version = 1;
inline constexpr int map_encoding_version = 1;

/// Runs one `pyra` invocation. args excludes the program name.
/// Exit codes: 0 success, 1 validation error, 2 I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pyra::cli
