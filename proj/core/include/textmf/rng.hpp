#pragma once

#include <cstdint>
#include <random>

namespace textmf {

/// Seeded pseudo-random source with portable draw algorithms.
///
/// The generator is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Bounded integers use rejection sampling and doubles use the
/// top 53 bits of one draw, so every result is reproducible across platforms
/// and standard library implementations (std::uniform_*_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform double in (0, 2).
  double uniform02() { return 2.0 * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace textmf
