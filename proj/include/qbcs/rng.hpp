#pragma once

// Portable seeded randomness.
//
// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions and std::shuffle do not, so everything that turns engine
// output into numbers lives here. Substreams are derived with SplitMix64:
//
//   derive_seed(seed, {a, b, c}) = mix(mix(mix(seed ^ G) ^ a ...) ...)
//
// Each unit of independent work (a voter, an election, a trial) owns one
// substream keyed by its indices, so the result never depends on the order
// in which work is scheduled.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>

namespace qbcs {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                           std::initializer_list<std::uint64_t> stream) noexcept {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
  for (std::uint64_t key : stream) h = splitmix64(h ^ splitmix64(key + 0x3c6ef372fe94f82bULL));
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qbcs
