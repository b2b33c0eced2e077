#include "polyproj/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "polyproj/errors.hpp"

namespace polyproj {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw NumericError("cannot format double");
  return std::string(buf, ptr);
}

namespace {
template <class T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument(std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  return v;
}
}  // namespace

double parse_double(std::string_view s) { return parse_number<double>(s, "real"); }
int parse_int(std::string_view s) { return parse_number<int>(s, "integer"); }
std::uint64_t parse_u64(std::string_view s) { return parse_number<std::uint64_t>(s, "unsigned"); }

std::vector<std::string> split_fields(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace polyproj
