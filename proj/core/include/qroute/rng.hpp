#pragma once

#include <cstdint>

namespace qroute {

/// SplitMix64 finalizer; scrambles a 64-bit word into a well-mixed one.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return hash_combine(hash_combine(a, b), c);
}

/// Counter-based generator: every draw is a pure function of (key, counter),
/// so streams can be consumed in any order or from any thread and still
/// produce identical values.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t key_a, std::uint64_t key_b) : key_(hash_combine(key_a, key_b)) {}

  std::uint64_t word(std::uint64_t counter) const {
    return mix64(key_ + 0x9e3779b97f4a7c15ull * (counter + 1));
  }

  /// Uniform double in [0, 1) built from the top 53 bits of the word.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
  }

  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }

 private:
  std::uint64_t key_;
};

}  // namespace qroute
