#ifndef EXPCX_RANDOM_HPP
#define EXPCX_RANDOM_HPP

// Reproducible randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard (10000th output for the default seed
// 5489 is 9981545732273789042). Residues are drawn by rejection sampling on
// the raw 64-bit outputs, never through std::uniform_int_distribution, whose
// mapping is implementation-defined.

#include <cstdint>
#include <random>
#include <string_view>

namespace expcx {

inline constexpr std::string_view kPrngName = "mt19937_64/rejection-mod-q";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    // accept the first 2^64 - (2^64 mod bound) values, a multiple of bound
    const std::uint64_t rem = (UINT64_MAX % bound + 1) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r <= UINT64_MAX - rem) return r % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a label, using
/// the splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t label) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (label + 1);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

}  // namespace expcx

#endif  // EXPCX_RANDOM_HPP
