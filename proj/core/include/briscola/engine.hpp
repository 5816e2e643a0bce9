#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "briscola/card.hpp"
#include "briscola/policies.hpp"

namespace briscola {

enum class Seat : std::uint8_t { G1 = 0, G2 = 1 };
enum class Outcome : std::uint8_t { G1 = 0, G2 = 1, Tie = 2 };

constexpr Seat other(Seat s) { return s == Seat::G1 ? Seat::G2 : Seat::G1; }
constexpr int seat_index(Seat s) { return static_cast<int>(s); }

std::string_view seat_name(Seat s);
std::string_view outcome_name(Outcome o);

inline constexpr int kTricksPerGame = 20;
inline constexpr int kHandSize = 3;

// Up to three cards held by one seat, in acquisition order.
class Hand {
 public:
  std::span<const Card> cards() const { return {cards_.data(), size_}; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool contains(Card c) const;
  void add(Card c);
  // Returns false if the card is not held.
  bool remove(Card c);

 private:
  std::array<Card, kHandSize> cards_{};
  std::size_t size_ = 0;
};

struct GameState {
  std::array<Hand, 2> hands;
  // Undrawn cards, top of the stock at stock[stock_top]; the exposed briscola
  // is the last element.
  std::array<Card, kDeckSize - 2 * kHandSize> stock{};
  int stock_top = 0;
  Card exposed;
  Suit trump = Suit::Denari;
  std::array<int, 2> points{0, 0};
  std::array<int, 2> briscole_total{0, 0};
  CardSet memory;
  Seat leader = Seat::G1;
  int trick_index = 1;

  int stock_size() const { return static_cast<int>(stock.size()) - stock_top; }
};

// True iff the leader takes the trick. Throws std::invalid_argument when both
// cards are the same card.
bool resolve_trick(Card leader_card, Card responder_card, Suit trump);

// Deals a permutation of the 40-card deck: positions 0-2 to G1, 3-5 to G2,
// position 6 is exposed (and fixes the trump suit), 7-39 form the stock top
// down with the exposed card appended at the bottom. Throws
// std::invalid_argument if the input is not a permutation of the deck.
GameState deal(std::span<const Card> permutation);

struct TrickRecord {
  int trick = 0;  // 1..20
  Seat leader = Seat::G1;
  Card card_g1;
  Card card_g2;
  Seat winner = Seat::G1;
  int points = 0;
  // After this trick's draws.
  int briscole_g1 = 0;
  int briscole_g2 = 0;
};

struct GameResult {
  Suit trump = Suit::Denari;
  Outcome outcome = Outcome::Tie;
  int points_g1 = 0;
  int points_g2 = 0;
  int briscole_g1 = 0;
  int briscole_g2 = 0;

  int delta_briscola() const { return briscole_g1 - briscole_g2; }
};

struct GameTranscript {
  GameResult result;
  std::array<TrickRecord, kTricksPerGame> tricks{};
};

// Plays the trick at s.trick_index: leader chooses, responder answers, the
// winner scores and, while stock remains, draws first; then advances the state.
TrickRecord play_trick(GameState& s, PolicyId policy_g1, PolicyId policy_g2);

// Plays one full 20-trick game. Pure function of its arguments.
GameTranscript play_game(PolicyId policy_g1, PolicyId policy_g2,
                         std::span<const Card> permutation);

}  // namespace briscola
