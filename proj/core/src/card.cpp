#include "briscola/card.hpp"

#include <charconv>

namespace briscola {
namespace {

constexpr std::array<std::string_view, kNumSuits> kSuitNames = {"Denari", "Spade", "Bastoni",
                                                                "Coppe"};
constexpr std::array<std::string_view, kNumRanks> kRankNames = {
    "Asso", "2", "Tre", "4", "5", "6", "7", "Fante", "Cavallo", "Re"};

}  // namespace

std::string_view suit_name(Suit s) { return kSuitNames[suit_ordinal(s)]; }

std::optional<Suit> parse_suit(std::string_view name) {
  for (int i = 0; i < kNumSuits; ++i) {
    if (kSuitNames[i] == name) return static_cast<Suit>(i);
  }
  return std::nullopt;
}

std::string to_string(Card c) {
  std::string out(kRankNames[c.rank() - 1]);
  out += " di ";
  out += suit_name(c.suit());
  return out;
}

std::optional<Card> parse_card(std::string_view text) {
  constexpr std::string_view kSep = " di ";
  const auto pos = text.find(kSep);
  if (pos == std::string_view::npos) return std::nullopt;
  const auto rank_text = text.substr(0, pos);
  const auto suit = parse_suit(text.substr(pos + kSep.size()));
  if (!suit) return std::nullopt;
  for (int r = 0; r < kNumRanks; ++r) {
    if (kRankNames[r] == rank_text) return Card(*suit, r + 1);
  }
  return std::nullopt;
}

}  // namespace briscola
