#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "briscola/card.hpp"

namespace briscola {

// SplitMix64 (Steele, Lea, Flood 2014). Used only to expand a 64-bit seed
// into generator state and as the avalanche mixer for substream seeds.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // The SplitMix64 output finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna). State seeded from four consecutive
// SplitMix64 outputs.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  constexpr std::uint64_t next() {
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

  constexpr std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  constexpr const std::array<std::uint64_t, 4>& state() const { return s_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

// Uniform integer in [0, n). Draws 64-bit outputs, rejects any value
// >= n * floor(2^64 / n), and reduces the accepted value modulo n.
// Throws std::invalid_argument for n == 0.
std::uint64_t next_uniform_below(Xoshiro256& rng, std::uint64_t n);

// In-place Fisher-Yates: for i from size-1 down to 1, swap deck[i] with
// deck[k], k uniform in {0..i}.
void fisher_yates_shuffle(std::span<Card> deck, Xoshiro256& rng);

// Per-game substream seed:
//   mix(mix(mix(master_seed) ^ match_id) ^ game_index)
// where mix is the SplitMix64 step (add golden gamma, then finalizer).
std::uint64_t game_seed(std::uint64_t master_seed, std::uint64_t match_id,
                        std::uint64_t game_index);

}  // namespace briscola
