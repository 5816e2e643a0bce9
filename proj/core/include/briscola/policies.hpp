#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string_view>

#include "briscola/card.hpp"

namespace briscola {

enum class PolicyId : std::uint8_t { Greedy = 0, Hoarder = 1, Counter = 2 };

inline constexpr std::array<PolicyId, 3> kAllPolicies = {PolicyId::Greedy, PolicyId::Hoarder,
                                                         PolicyId::Counter};

// Single-letter code used in logs and on the command line: G, H, C.
char policy_code(PolicyId p);
std::optional<PolicyId> parse_policy(char code);

// Overtrump threshold shared by the hoarder and counter follower rules.
inline constexpr int kOvertrumpThreshold = 10;

// What a seat sees when it has to play.
struct Observation {
  std::span<const Card> hand;
  std::optional<Card> opponent_card;  // empty when leading
  Suit trump = Suit::Denari;
  CardSet memory;  // exposed briscola plus every card played in completed tricks
};

// Position of a rank in the deck's rank order, Asso = 1 through 2 = 10.
constexpr int rank_position(int rank) { return kNumRanks + 1 - rank_strength(rank); }

// Cheapest-point order. Equal-point cards are ordered by rank position
// (so among the zero-point ranks 7 < 6 < 5 < 4 < 2), then by suit ordinal, which
// makes the order total over the deck.
constexpr std::strong_ordering prec_compare(Card a, Card b) {
  if (auto c = a.points() <=> b.points(); c != 0) return c;
  if (auto c = rank_position(a.rank()) <=> rank_position(b.rank()); c != 0) return c;
  return suit_ordinal(a.suit()) <=> suit_ordinal(b.suit());
}

constexpr bool precedes(Card a, Card b) { return prec_compare(a, b) < 0; }

Card greedy_choose(const Observation& obs);
Card hoarder_choose(const Observation& obs);
Card counter_choose(const Observation& obs);

Card choose(PolicyId policy, const Observation& obs);

}  // namespace briscola
