#include "polyproj/angle_cache.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "polyproj/errors.hpp"
#include "polyproj/format.hpp"

namespace polyproj {

AngleCache::AngleCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto [key, value] = parse_record(line);
    entries_.insert_or_assign(key, value);
  }
}

std::optional<AngleEstimate> AngleCache::find(const AngleKey& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void AngleCache::insert(const AngleKey& key, const AngleEstimate& value) {
  std::lock_guard lock(mutex_);
  if (!entries_.insert_or_assign(key, value).second) return;
  if (path_) {
    std::ofstream out(*path_, std::ios::app);
    out << format_record(key, value) << '\n';
  }
}

std::size_t AngleCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::string AngleCache::format_record(const AngleKey& key, const AngleEstimate& value) {
  std::ostringstream os;
  os << to_string(key.family) << ',' << key.n << ',' << key.k << ',' << key.g << ','
     << (key.kind == AngleKind::Internal ? "int" : "ext") << ',' << key.samples << ','
     << key.seed << ',' << format_double(value.value) << ',' << format_double(value.std_error);
  return os.str();
}

std::pair<AngleKey, AngleEstimate> AngleCache::parse_record(const std::string& line) {
  std::vector<std::string> f = split_fields(line, ',');
  if (f.size() != 9) throw InvalidArgument("angle cache record needs 9 fields: '" + line + "'");
  AngleKey key{};
  key.family = parse_family(f[0]);
  key.n = parse_int(f[1]);
  key.k = parse_int(f[2]);
  key.g = parse_int(f[3]);
  if (f[4] == "int")
    key.kind = AngleKind::Internal;
  else if (f[4] == "ext")
    key.kind = AngleKind::External;
  else
    throw InvalidArgument("angle cache kind must be int or ext: '" + f[4] + "'");
  key.samples = parse_u64(f[5]);
  key.seed = parse_u64(f[6]);
  AngleEstimate est;
  est.value = parse_double(f[7]);
  est.std_error = parse_double(f[8]);
  est.method = AngleMethod::MonteCarlo;
  est.samples = key.samples;
  return {key, est};
}

}  // namespace polyproj
