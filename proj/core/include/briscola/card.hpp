#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace briscola {

// Declaration order is the deterministic tie-break order used by the
// policies' comparator.
enum class Suit : std::uint8_t { Denari = 0, Spade = 1, Bastoni = 2, Coppe = 3 };

inline constexpr std::array<Suit, 4> kAllSuits = {Suit::Denari, Suit::Spade, Suit::Bastoni,
                                                  Suit::Coppe};
inline constexpr int kNumSuits = 4;
inline constexpr int kNumRanks = 10;
inline constexpr int kDeckSize = kNumSuits * kNumRanks;
inline constexpr int kTotalPoints = 120;

constexpr int suit_ordinal(Suit s) { return static_cast<int>(s); }

std::string_view suit_name(Suit s);
std::optional<Suit> parse_suit(std::string_view name);

// Card point value by rank (Asso 11, Tre 10, Re 4, Cavallo 3, Fante 2, others 0).
constexpr int rank_points(int rank) {
  switch (rank) {
    case 1: return 11;
    case 3: return 10;
    case 10: return 4;
    case 9: return 3;
    case 8: return 2;
    default: return 0;
  }
}

// In-suit strength ordinal: 2 -> 1 (weakest), 4..10 -> 2..8, Tre -> 9, Asso -> 10.
constexpr int rank_strength(int rank) {
  switch (rank) {
    case 2: return 1;
    case 3: return 9;
    case 1: return 10;
    default: return rank - 2;
  }
}

// A card of the 40-card Italian deck. Encoded as suit * 10 + (rank - 1), so the
// canonical deck order is Denari 1..10, Spade 1..10, Bastoni 1..10, Coppe 1..10.
class Card {
 public:
  constexpr Card() = default;
  constexpr Card(Suit suit, int rank)
      : index_(static_cast<std::uint8_t>(suit_ordinal(suit) * kNumRanks + rank - 1)) {}

  static constexpr Card from_index(int index) {
    Card c;
    c.index_ = static_cast<std::uint8_t>(index);
    return c;
  }

  constexpr int index() const { return index_; }
  constexpr Suit suit() const { return static_cast<Suit>(index_ / kNumRanks); }
  constexpr int rank() const { return index_ % kNumRanks + 1; }
  constexpr int points() const { return rank_points(rank()); }
  constexpr int strength() const { return rank_strength(rank()); }
  constexpr bool is_carico() const { return rank() == 1 || rank() == 3; }

  friend constexpr bool operator==(Card a, Card b) = default;

 private:
  std::uint8_t index_ = 0;
};

// "RankName di Suit", with rank names Asso, 2, Tre, 4, 5, 6, 7, Fante, Cavallo, Re.
std::string to_string(Card c);
std::optional<Card> parse_card(std::string_view text);

// Set of cards as a 40-bit mask over card indices.
class CardSet {
 public:
  constexpr CardSet() = default;
  constexpr explicit CardSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr CardSet full_deck() { return CardSet((std::uint64_t{1} << kDeckSize) - 1); }

  constexpr bool contains(Card c) const { return (bits_ >> c.index()) & 1U; }
  constexpr void insert(Card c) { bits_ |= std::uint64_t{1} << c.index(); }
  constexpr void erase(Card c) { bits_ &= ~(std::uint64_t{1} << c.index()); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  friend constexpr bool operator==(CardSet a, CardSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

using Deck = std::array<Card, kDeckSize>;

// The 40 cards in canonical index order.
constexpr Deck canonical_deck() {
  Deck deck{};
  for (int i = 0; i < kDeckSize; ++i) deck[i] = Card::from_index(i);
  return deck;
}

}  // namespace briscola
