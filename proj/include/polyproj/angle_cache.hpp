#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

#include "polyproj/angles.hpp"

namespace polyproj {

enum class AngleKind { Internal, External };

struct AngleKey {
  Family family;
  int n;
  int k;  // lower face dimension; -1 for external angles
  int g;
  AngleKind kind;
  std::uint64_t samples;
  std::uint64_t seed;  // master seed

  auto tie() const { return std::tie(family, n, k, g, kind, samples, seed); }
  bool operator<(const AngleKey& o) const { return tie() < o.tie(); }
};

/// In-process memo of Monte Carlo angles, optionally backed by an append-only
/// text file with one record per line:
///   family,n,k,g,kind,samples,seed,value,stderr
class AngleCache {
 public:
  AngleCache() = default;
  /// Loads existing records from `path` (if present) and appends new ones there.
  explicit AngleCache(std::filesystem::path path);

  std::optional<AngleEstimate> find(const AngleKey& key) const;
  void insert(const AngleKey& key, const AngleEstimate& value);
  std::size_t size() const;

  static std::string format_record(const AngleKey& key, const AngleEstimate& value);
  /// Throws InvalidArgument on malformed lines.
  static std::pair<AngleKey, AngleEstimate> parse_record(const std::string& line);

 private:
  mutable std::mutex mutex_;
  std::map<AngleKey, AngleEstimate> entries_;
  std::optional<std::filesystem::path> path_;
};

}  // namespace polyproj
