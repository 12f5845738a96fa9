#pragma once

#include <cmath>
#include <cstdint>

namespace banditlab {

// splitmix64 finalizer; full avalanche, bijective on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

// Seed of the index-th stream rooted at base. Used for run seeds inside an
// ensemble and for cell seeds inside a sweep, so any slice of the work can be
// replayed without running the rest.
inline constexpr std::uint64_t derive_stream_seed(std::uint64_t base,
                                                  std::uint64_t index) noexcept {
  return mix64(base + (index + 1) * kGolden64);
}

// xoshiro256++ seeded through splitmix64. The spare deviate of the polar
// normal transform is part of the stream state, so (seed, call sequence)
// fully determines every draw.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& w : state_) {
      x += kGolden64;
      w = mix64(x);
    }
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via the polar method; the second member of each
  // accepted pair is cached.
  double next_normal() noexcept {
    if (spare_valid_) {
      spare_valid_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    spare_valid_ = true;
    return u * m;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool spare_valid_ = false;
};

}  // namespace banditlab
