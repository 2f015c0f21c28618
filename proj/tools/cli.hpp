#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hetnet::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_data = 3;
inline constexpr int exit_numerical = 4;

// JSON documents carry this in their "version" key.
inline constexpr int json_schema_version = 1;

/// Runs one command line (args excludes the program name). Data goes to
/// `out` unless --out-file is given, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// `start:end:step`, both ends inclusive. Throws std::invalid_argument.
std::vector<double> parse_grid(const std::string& text);

}  // namespace hetnet::cli
