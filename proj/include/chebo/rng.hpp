#pragma once

// Self-contained PRNG so random streams are bit-identical across platforms
// and standard libraries. splitmix64 state transition; bounded draws use
// Lemire's unbiased multiply-with-rejection. Monte Carlo trials each get an
// independent stream derived from (seed, trial index) by the split rule in
// stream_for(), which makes results independent of thread count.

#include <cstdint>

namespace chebo {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, n), n >= 1 (Lemire, Fast Random Integer Generation
  // in an Interval).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    std::uint64_t lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        x = next();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Stream split: trial t of master seed s starts from
  // mix(s) xor mix(golden * (t+1)), where mix is one splitmix64 step.
  static SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 a(seed), b(0x9E3779B97F4A7C15ull * (index + 1));
    return SplitMix64(a.next() ^ b.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace chebo
