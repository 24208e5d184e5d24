#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace glcmlab::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer. Full avalanche, so nearby inputs give unrelated outputs.
constexpr std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

// Deterministic counter-based stream (SplitMix64). Substreams are keyed by
// (seed, index) so sample k can be regenerated in isolation, which is what
// makes order-independent parallel generation possible.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  static Stream for_substream(std::uint64_t seed, std::uint64_t index) {
    return Stream(mix(seed + kGolden) ^ mix(index * kGolden + 1));
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform in [0, 1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  // Standard normal via Box-Muller; uses exactly two draws per call.
  double next_gaussian() {
    const double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates with explicit draws; std::shuffle is not pinned across
// standard libraries.
template <typename T>
void shuffle(std::vector<T>& values, Stream& stream) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[stream.next_below(i)]);
  }
}

}  // namespace glcmlab::rng
