#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "briscola/engine.hpp"
#include "briscola/policies.hpp"
#include "reference_game.hpp"

using namespace briscola;

namespace {

Card C(Suit s, int r) { return Card(s, r); }

Observation leading(const std::vector<Card>& hand, Suit trump, CardSet memory = {}) {
  return Observation{hand, std::nullopt, trump, memory};
}

Observation following(const std::vector<Card>& hand, Card opp, Suit trump, CardSet memory = {}) {
  return Observation{hand, opp, trump, memory};
}

CardSet set_of(std::initializer_list<Card> cards) {
  CardSet s;
  for (Card c : cards) s.insert(c);
  return s;
}

}  // namespace

TEST(PrecCompare, Examples) {
  // Equal points: the stronger rank comes first.
  EXPECT_TRUE(prec_compare(C(Suit::Coppe, 2), C(Suit::Coppe, 4)) > 0);
  EXPECT_TRUE(prec_compare(C(Suit::Spade, 7), C(Suit::Bastoni, 8)) < 0);
  EXPECT_TRUE(prec_compare(C(Suit::Denari, 2), C(Suit::Spade, 2)) < 0);
  EXPECT_TRUE(prec_compare(C(Suit::Spade, 7), C(Suit::Spade, 6)) < 0);
  EXPECT_TRUE(prec_compare(C(Suit::Spade, 10), C(Suit::Denari, 3)) < 0);
}

TEST(PrecCompare, TotalOrder) {
  const Deck full = canonical_deck();
  std::vector<Card> deck(full.begin(), full.end());
  std::sort(deck.begin(), deck.end(), precedes);
  for (std::size_t i = 1; i < deck.size(); ++i) EXPECT_TRUE(precedes(deck[i - 1], deck[i]));
  EXPECT_EQ(deck.front(), C(Suit::Denari, 7));
  EXPECT_EQ(deck.back(), C(Suit::Coppe, 1));
}

TEST(Greedy, Examples) {
  const Suit t = Suit::Denari;
  EXPECT_EQ(greedy_choose(leading({C(t, 1), C(Suit::Coppe, 2), C(Suit::Spade, 10)}, t)),
            C(Suit::Coppe, 2));
  EXPECT_EQ(greedy_choose(following({C(Suit::Coppe, 1), C(t, 2), C(Suit::Spade, 5)},
                                    C(Suit::Coppe, 10), t)),
            C(Suit::Coppe, 1));
  // Both trumps win and score nothing; the stronger one is cheaper.
  EXPECT_EQ(greedy_choose(following({C(t, 2), C(t, 7), C(Suit::Spade, 4)}, C(Suit::Coppe, 10), t)),
            C(t, 7));
  EXPECT_EQ(greedy_choose(following({C(Suit::Spade, 5), C(Suit::Bastoni, 8), C(Suit::Coppe, 10)},
                                    C(Suit::Spade, 1), t)),
            C(Suit::Spade, 5));
}

TEST(Hoarder, Examples) {
  const Suit t = Suit::Denari;
  EXPECT_EQ(hoarder_choose(following({C(t, 2), C(Suit::Spade, 4)}, C(Suit::Coppe, 10), t)),
            C(Suit::Spade, 4));
  EXPECT_EQ(hoarder_choose(following({C(t, 2), C(Suit::Spade, 4)}, C(Suit::Coppe, 1), t)),
            C(t, 2));
  EXPECT_EQ(hoarder_choose(following({C(t, 2), C(t, 5)}, C(Suit::Coppe, 10), t)), C(t, 5));
  // Threshold is inclusive: a Tre is worth overtrumping.
  EXPECT_EQ(hoarder_choose(following({C(t, 2), C(Suit::Spade, 4)}, C(Suit::Coppe, 3), t)),
            C(t, 2));
}

TEST(Counter, Examples) {
  const Suit t = Suit::Denari;
  const std::vector<Card> hand = {C(Suit::Coppe, 1), C(Suit::Spade, 3), C(Suit::Bastoni, 4)};
  EXPECT_EQ(counter_choose(leading(hand, t, set_of({C(Suit::Coppe, 3)}))), C(Suit::Coppe, 1));
  EXPECT_EQ(counter_choose(leading(hand, t, set_of({C(Suit::Spade, 1)}))), C(Suit::Spade, 3));
  EXPECT_EQ(counter_choose(leading(hand, t, set_of({C(Suit::Bastoni, 1)}))), C(Suit::Bastoni, 4));
  EXPECT_EQ(counter_choose(leading(hand, t)), C(Suit::Bastoni, 4));
  // Both trapped: the Asso goes first.
  EXPECT_EQ(counter_choose(leading(hand, t, set_of({C(Suit::Spade, 1), C(Suit::Coppe, 3)}))),
            C(Suit::Coppe, 1));
}

TEST(Counter, TrumpCaricoNeverTrapped) {
  const Suit t = Suit::Coppe;
  const std::vector<Card> hand = {C(Suit::Coppe, 1), C(Suit::Bastoni, 4)};
  EXPECT_EQ(counter_choose(leading(hand, t, set_of({C(Suit::Coppe, 3)}))), C(Suit::Bastoni, 4));
}

TEST(Policies, Codes) {
  for (PolicyId p : kAllPolicies) EXPECT_EQ(parse_policy(policy_code(p)), p);
  EXPECT_FALSE(parse_policy('X').has_value());
}

namespace {

struct RandomObservation {
  std::vector<Card> hand;
  std::optional<Card> opp;
  Suit trump;
  CardSet memory;
  Observation obs() const { return Observation{hand, opp, trump, memory}; }
};

RandomObservation random_observation(std::mt19937_64& gen) {
  const Deck full = canonical_deck();
  std::vector<Card> deck(full.begin(), full.end());
  std::shuffle(deck.begin(), deck.end(), gen);
  RandomObservation r;
  const int hand_size = 1 + static_cast<int>(gen() % 3);
  r.hand.assign(deck.begin(), deck.begin() + hand_size);
  if (gen() % 2) r.opp = deck[hand_size];
  r.trump = kAllSuits[gen() % 4];
  for (int i = hand_size + 1; i < 40; ++i) {
    if (gen() % 3 == 0) r.memory.insert(deck[i]);
  }
  return r;
}

reference::Card ref(Card c) { return {suit_ordinal(c.suit()), c.rank()}; }

}  // namespace

TEST(PoliciesFuzz, MatchReference) {
  std::mt19937_64 gen(314159);
  const std::array<reference::Policy, 3> ref_policy = {reference::Policy::G, reference::Policy::H,
                                                       reference::Policy::C};
  for (int i = 0; i < 100000; ++i) {
    const RandomObservation r = random_observation(gen);
    std::vector<reference::Card> hand;
    for (Card c : r.hand) hand.push_back(ref(c));
    std::set<reference::Card> memory;
    for (Card c : canonical_deck()) {
      if (r.memory.contains(c)) memory.insert(ref(c));
    }
    std::optional<reference::Card> opp;
    if (r.opp) opp = ref(*r.opp);
    for (PolicyId p : kAllPolicies) {
      const Card ours = choose(p, r.obs());
      const reference::Card theirs =
          reference::choose(ref_policy[static_cast<int>(p)], hand, opp, suit_ordinal(r.trump), memory);
      ASSERT_EQ(ref(ours), theirs) << "iteration " << i << " policy " << policy_code(p);
    }
  }
}

TEST(PoliciesFuzz, Properties) {
  std::mt19937_64 gen(271828);
  for (int i = 0; i < 100000; ++i) {
    RandomObservation r = random_observation(gen);
    const Observation obs = r.obs();
    const Card g = greedy_choose(obs);
    const Card h = hoarder_choose(obs);
    const Card c = counter_choose(obs);
    for (Card x : {g, h, c}) {
      ASSERT_NE(std::find(r.hand.begin(), r.hand.end(), x), r.hand.end());
    }
    ASSERT_EQ(greedy_choose(obs), g);
    ASSERT_EQ(counter_choose(obs), c);

    const bool holds_non_trump = std::any_of(r.hand.begin(), r.hand.end(),
                                             [&](Card x) { return x.suit() != r.trump; });
    if (!r.opp) {
      ASSERT_EQ(g, h);
      if (holds_non_trump) {
        ASSERT_NE(h.suit(), r.trump);
      }
      continue;
    }
    // Responding: a trump played over a non-trump lead always wins.
    for (Card x : {g, h, c}) {
      if (x.suit() == r.trump && r.opp->suit() != r.trump) {
        ASSERT_FALSE(resolve_trick(*r.opp, x, r.trump));
      }
    }
    // Greedy takes the trick whenever some card can.
    const bool can_win = std::any_of(r.hand.begin(), r.hand.end(),
                                     [&](Card x) { return !resolve_trick(*r.opp, x, r.trump); });
    ASSERT_EQ(can_win, !resolve_trick(*r.opp, g, r.trump));
    // The counter's reply ignores memory.
    ASSERT_EQ(c, h);
    RandomObservation other_memory = r;
    other_memory.memory = CardSet(gen() & CardSet::full_deck().bits());
    ASSERT_EQ(counter_choose(other_memory.obs()), c);
  }
}
