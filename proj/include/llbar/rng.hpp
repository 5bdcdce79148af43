#pragma once

#include <cstdint>
#include <limits>

namespace llbar {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-keyed random stream. The state is derived from (seed,
/// stream_index) alone, so stream i of a run never depends on how many
/// other streams were consumed or on which thread consumes it. Satisfies
/// UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  constexpr RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : seed_(seed),
        stream_index_(stream_index),
        state_(mix64(seed ^ mix64(stream_index + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  [[nodiscard]] constexpr std::uint64_t seed() const { return seed_; }
  [[nodiscard]] constexpr std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_;
};

}  // namespace llbar
