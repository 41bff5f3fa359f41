#pragma once

// Deterministic generators. The algorithms and seeding procedure below are
// part of the block-verification contract: independent implementations must
// reproduce them bit for bit.
//
//   SplitMix64 (Steele, Lea, Flood):
//     state += 0x9e3779b97f4a7c15
//     z = state
//     z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//     z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//     return z ^ (z >> 31)
//
//   xoshiro256** 1.0 (Blackman, Vigna), seeded from a 64-bit value by taking
//   four consecutive SplitMix64 outputs as s[0..3].
//
// A consensus deployment would swap in a CSPRNG at Xoshiro256StarStar's
// call sites; nothing else depends on the concrete algorithm.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace feemarket {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t state_;
};

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm();
  }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

/// Uniform in [0, 1) with 53 random bits.
inline double unit_closed_open(std::uint64_t x) noexcept { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// Uniform in (0, 1): midpoints of the 2^53 grid.
inline double unit_open(std::uint64_t x) noexcept {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

/// Integer in [0, bound) by 128-bit multiply-shift. bound > 0.
template <class Gen>
std::uint64_t bounded(Gen& gen, std::uint64_t bound) noexcept {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::uint64_t>((static_cast<u128>(gen()) * bound) >> 64);
}

/// Seed mixing: h = base; for each part p, h = splitmix64_output(h ^ p),
/// where splitmix64_output is one SplitMix64 step started at that state.
/// Used to derive independent sub-seeds for runs, samples and partitions.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept;

}  // namespace feemarket
