#include "briscola/rng.hpp"

#include <stdexcept>
#include <utility>

namespace briscola {

std::uint64_t next_uniform_below(Xoshiro256& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_uniform_below: n must be positive");
  // n * floor(2^64 / n) == 2^64 - (2^64 mod n); accepting x below it means
  // x <= UINT64_MAX - (2^64 mod n).
  constexpr std::uint64_t kMax = ~std::uint64_t{0};
  const std::uint64_t excess = (kMax % n + 1) % n;
  for (;;) {
    const std::uint64_t x = rng.next();
    if (x <= kMax - excess) return x % n;
  }
}

void fisher_yates_shuffle(std::span<Card> deck, Xoshiro256& rng) {
  for (std::size_t i = deck.size(); i-- > 1;) {
    const auto k = static_cast<std::size_t>(next_uniform_below(rng, i + 1));
    std::swap(deck[i], deck[k]);
  }
}

std::uint64_t game_seed(std::uint64_t master_seed, std::uint64_t match_id,
                        std::uint64_t game_index) {
  auto step = [](std::uint64_t x) { return SplitMix64(x).next(); };
  return step(step(step(master_seed) ^ match_id) ^ game_index);
}

}  // namespace briscola
