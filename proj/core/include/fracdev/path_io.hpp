#pragma once

// Path files. CSV has the header "t,value" and shortest round-trip decimal
// numbers, so writing and re-reading is bit-exact. The binary format is a
// little-endian header (magic, J, T, optional process parameters) followed
// by the N + 1 values.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fracdev/processes.hpp"

namespace fracdev::io {

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);
double parse_double(std::string_view text);

void write_csv(const process::Path& path, std::ostream& out);
/// Rejects grids that are not uniform with 2^J cells starting at t = 0.
process::Path read_csv(std::istream& in);

void write_binary(const process::Path& path, std::ostream& out);
process::Path read_binary(std::istream& in);

/// Format chosen by extension: ".csv" is text, anything else binary.
void save_path(const process::Path& path, const std::filesystem::path& file);
process::Path load_path(const std::filesystem::path& file);

}  // namespace fracdev::io
