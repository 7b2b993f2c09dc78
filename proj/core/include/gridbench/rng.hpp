#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace gridbench {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// mt19937_64 with a self-contained bounded-integer draw. The standard
/// distributions are not bit-stable across library implementations, so the
/// rejection sampling lives here; identical seeds give identical streams on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform_int: empty range");
    std::uint64_t span = std::uint64_t(hi) - std::uint64_t(lo) + 1;
    if (span == 0) return std::int64_t(next_u64());  // full 64-bit range
    std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t limit = max - max % span;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return lo + std::int64_t(v % span);
  }

  /// Uniform nonzero integer in [lo, hi].
  std::int64_t uniform_nonzero_int(std::int64_t lo, std::int64_t hi) {
    std::int64_t v;
    do {
      v = uniform_int(lo, hi);
    } while (v == 0);
    return v;
  }

  bool coin_flip() { return uniform_int(0, 1) == 1; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gridbench
