#pragma once

#include <cstdint>
#include <limits>

namespace gtzw {

/// Counter-based generator: output k of stream `key` is a SplitMix64
/// finalizer applied to key + k * golden. Streams are derived from
/// (seed, path, level, sweep), so results do not depend on scheduling.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t key = 0) noexcept : key_(key) {}

  static constexpr std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  /// Stream key for a tuple of coordinates.
  static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                        std::uint64_t c = 0) noexcept {
    return mix(mix(mix(mix(seed) ^ a) ^ (b * 0xD1B54A32D192ED03ULL)) ^ (c * 0xABC98388FB8FAC03ULL));
  }

  static StreamRng for_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) noexcept {
    return StreamRng(derive(seed, a, b, c));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gtzw
