#pragma once

// Counter-based random streams. Every stream is addressed by (key, stream id)
// and is reproducible independently of how work is split across threads.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace polyproj {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// UniformRandomBitGenerator over Philox4x32-10. The 128-bit counter is split
/// into a 64-bit draw index (low words) and a 64-bit stream id (high words).
class PhiloxEngine {
 public:
  using result_type = std::uint32_t;

  PhiloxEngine(std::uint64_t key, std::uint64_t stream) : key_(key), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int pos_ = 4;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Folds a list of words into one well-mixed 64-bit id.
std::uint64_t derive_id(std::initializer_list<std::uint64_t> words);

/// Standard normal draws from one Philox stream.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t key, std::uint64_t stream) : engine_(key, stream) {}
  double operator()() { return normal_(engine_); }
  PhiloxEngine& engine() { return engine_; }

 private:
  PhiloxEngine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace polyproj
