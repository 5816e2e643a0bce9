#include "briscola/policies.hpp"

#include <cassert>

namespace briscola {
namespace {

// Returns the precedes-minimal card of the hand satisfying pred, if any.
template <typename Pred>
std::optional<Card> min_card_if(std::span<const Card> hand, Pred pred) {
  std::optional<Card> best;
  for (Card c : hand) {
    if (pred(c) && (!best || precedes(c, *best))) best = c;
  }
  return best;
}

std::optional<Card> min_card(std::span<const Card> hand) {
  return min_card_if(hand, [](Card) { return true; });
}

// Rule (i) of every follower: cheapest card of the led suit that outranks it.
std::optional<Card> in_suit_winner(const Observation& obs) {
  const Card opp = *obs.opponent_card;
  return min_card_if(obs.hand, [opp](Card c) {
    return c.suit() == opp.suit() && c.strength() > opp.strength();
  });
}

// Cheapest trump that takes the trick from the opponent's card.
std::optional<Card> winning_trump(const Observation& obs) {
  const Card opp = *obs.opponent_card;
  const Suit trump = obs.trump;
  return min_card_if(obs.hand, [opp, trump](Card c) {
    if (c.suit() != trump) return false;
    return opp.suit() != trump || c.strength() > opp.strength();
  });
}

Card hoarder_lead(const Observation& obs) {
  const Suit trump = obs.trump;
  if (auto c = min_card_if(obs.hand, [trump](Card x) { return x.suit() != trump; })) return *c;
  return *min_card(obs.hand);
}

Card hoarder_follow(const Observation& obs, int threshold) {
  if (auto c = in_suit_winner(obs)) return *c;
  if (obs.opponent_card->points() >= threshold) {
    if (auto c = winning_trump(obs)) return *c;
  }
  return hoarder_lead(obs);
}

}  // namespace

char policy_code(PolicyId p) {
  switch (p) {
    case PolicyId::Greedy: return 'G';
    case PolicyId::Hoarder: return 'H';
    case PolicyId::Counter: return 'C';
  }
  return '?';
}

std::optional<PolicyId> parse_policy(char code) {
  switch (code) {
    case 'G': return PolicyId::Greedy;
    case 'H': return PolicyId::Hoarder;
    case 'C': return PolicyId::Counter;
    default: return std::nullopt;
  }
}

Card greedy_choose(const Observation& obs) {
  assert(!obs.hand.empty());
  if (!obs.opponent_card) {
    // Lexicographic on (is-trump, points, strength): identical to hoarder_lead.
    return hoarder_lead(obs);
  }
  if (auto c = in_suit_winner(obs)) return *c;
  if (auto c = winning_trump(obs)) return *c;
  return *min_card(obs.hand);
}

Card hoarder_choose(const Observation& obs) {
  assert(!obs.hand.empty());
  if (!obs.opponent_card) return hoarder_lead(obs);
  return hoarder_follow(obs, kOvertrumpThreshold);
}

Card counter_choose(const Observation& obs) {
  assert(!obs.hand.empty());
  if (obs.opponent_card) return hoarder_follow(obs, kOvertrumpThreshold);

  // Carico trap: Asso before Tre, then suit order.
  std::optional<Card> trap;
  for (Card c : obs.hand) {
    if (c.suit() == obs.trump || !c.is_carico()) continue;
    const Card sibling(c.suit(), c.rank() == 1 ? 3 : 1);
    if (!obs.memory.contains(sibling)) continue;
    const bool better = !trap || c.points() > trap->points() ||
                        (c.points() == trap->points() &&
                         suit_ordinal(c.suit()) < suit_ordinal(trap->suit()));
    if (better) trap = c;
  }
  if (trap) return *trap;
  return hoarder_lead(obs);
}

Card choose(PolicyId policy, const Observation& obs) {
  switch (policy) {
    case PolicyId::Greedy: return greedy_choose(obs);
    case PolicyId::Hoarder: return hoarder_choose(obs);
    case PolicyId::Counter: return counter_choose(obs);
  }
  return greedy_choose(obs);
}

}  // namespace briscola
