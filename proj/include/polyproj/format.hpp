#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polyproj {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view s);
int parse_int(std::string_view s);
std::uint64_t parse_u64(std::string_view s);

std::vector<std::string> split_fields(std::string_view line, char sep);

}  // namespace polyproj
