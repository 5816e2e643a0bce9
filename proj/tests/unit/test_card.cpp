#include <gtest/gtest.h>

#include <set>

#include "briscola/card.hpp"

using namespace briscola;

TEST(Card, PointsSumTo120) {
  int total = 0;
  for (Card c : canonical_deck()) total += c.points();
  EXPECT_EQ(total, kTotalPoints);
}

TEST(Card, PointValues) {
  EXPECT_EQ(Card(Suit::Coppe, 1).points(), 11);
  EXPECT_EQ(Card(Suit::Coppe, 3).points(), 10);
  EXPECT_EQ(Card(Suit::Coppe, 10).points(), 4);
  EXPECT_EQ(Card(Suit::Coppe, 9).points(), 3);
  EXPECT_EQ(Card(Suit::Coppe, 8).points(), 2);
  for (int r : {2, 4, 5, 6, 7}) EXPECT_EQ(Card(Suit::Spade, r).points(), 0);
}

TEST(Card, StrengthIsAPermutation) {
  std::set<int> seen;
  for (int r = 1; r <= kNumRanks; ++r) seen.insert(rank_strength(r));
  EXPECT_EQ(seen.size(), 10u);
  EXPECT_EQ(*seen.begin(), 1);
  EXPECT_EQ(*seen.rbegin(), 10);
  EXPECT_EQ(rank_strength(2), 1);
  EXPECT_EQ(rank_strength(3), 9);
  EXPECT_EQ(rank_strength(1), 10);
  EXPECT_EQ(rank_strength(10), 8);
}

TEST(Card, StrengthOrderRespectsPoints) {
  // A higher-point card is never weaker in suit.
  for (int a = 1; a <= 10; ++a) {
    for (int b = 1; b <= 10; ++b) {
      if (rank_points(a) > rank_points(b)) {
        EXPECT_GT(rank_strength(a), rank_strength(b));
      }
    }
  }
}

TEST(Card, IndexEncoding) {
  const Card c(Suit::Bastoni, 7);
  EXPECT_EQ(c.index(), 26);
  EXPECT_EQ(c.suit(), Suit::Bastoni);
  EXPECT_EQ(c.rank(), 7);
  EXPECT_EQ(Card::from_index(26), c);
}

TEST(Card, NamesRoundTrip) {
  for (Card c : canonical_deck()) {
    const auto parsed = parse_card(to_string(c));
    ASSERT_TRUE(parsed.has_value()) << to_string(c);
    EXPECT_EQ(*parsed, c);
  }
  EXPECT_EQ(to_string(Card(Suit::Denari, 1)), "Asso di Denari");
  EXPECT_EQ(to_string(Card(Suit::Spade, 3)), "Tre di Spade");
  EXPECT_EQ(to_string(Card(Suit::Bastoni, 8)), "Fante di Bastoni");
  EXPECT_EQ(to_string(Card(Suit::Coppe, 9)), "Cavallo di Coppe");
  EXPECT_EQ(to_string(Card(Suit::Coppe, 10)), "Re di Coppe");
  EXPECT_EQ(to_string(Card(Suit::Coppe, 4)), "4 di Coppe");
}

TEST(Card, ParseRejectsJunk) {
  EXPECT_FALSE(parse_card("").has_value());
  EXPECT_FALSE(parse_card("Asso di Cuori").has_value());
  EXPECT_FALSE(parse_card("11 di Coppe").has_value());
  EXPECT_FALSE(parse_card("Asso  di Coppe").has_value());
}

TEST(CardSet, Basics) {
  CardSet s;
  EXPECT_TRUE(s.empty());
  s.insert(Card(Suit::Coppe, 10));
  s.insert(Card(Suit::Denari, 1));
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(s.contains(Card(Suit::Coppe, 10)));
  s.erase(Card(Suit::Coppe, 10));
  EXPECT_FALSE(s.contains(Card(Suit::Coppe, 10)));
  EXPECT_EQ(CardSet::full_deck().size(), 40);
}
