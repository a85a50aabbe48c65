#ifndef THRG_RANDOM_HPP
#define THRG_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <string_view>

namespace thrg {

// All sampling goes through these helpers instead of the <random>
// distributions, whose output is library-specific. Seeded runs are then
// reproducible on any toolchain.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

/// Uniform double in [0, 1) with 53 bits of precision.
inline double uniform_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(Rng& rng, double p) { return uniform_real(rng) < p; }

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Mixes a master seed with labels and indices into an independent stream seed.
/// derive_seed(m, {"haggle", "thrg"}, {100, 1, 7}) is stable across runs and platforms.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::string_view> labels,
                                 std::initializer_list<std::uint64_t> indices = {}) {
  std::uint64_t h = splitmix64(master);
  for (auto label : labels) h = splitmix64(h ^ fnv1a(label));
  for (auto index : indices) h = splitmix64(h ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace thrg

#endif  // THRG_RANDOM_HPP
