#include "briscola/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace briscola {

std::string_view seat_name(Seat s) { return s == Seat::G1 ? "G1" : "G2"; }

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::G1: return "G1";
    case Outcome::G2: return "G2";
    case Outcome::Tie: return "Tie";
  }
  return "?";
}

bool Hand::contains(Card c) const {
  return std::find(cards_.begin(), cards_.begin() + size_, c) != cards_.begin() + size_;
}

void Hand::add(Card c) {
  if (size_ == kHandSize) throw std::logic_error("hand already holds three cards");
  cards_[size_++] = c;
}

bool Hand::remove(Card c) {
  auto end = cards_.begin() + size_;
  auto it = std::find(cards_.begin(), end, c);
  if (it == end) return false;
  std::move(it + 1, end, it);
  --size_;
  return true;
}

bool resolve_trick(Card leader_card, Card responder_card, Suit trump) {
  if (leader_card == responder_card) {
    throw std::invalid_argument("resolve_trick: leader and responder played the same card " +
                                to_string(leader_card));
  }
  const Suit ls = leader_card.suit();
  const Suit rs = responder_card.suit();
  if (ls == rs) return leader_card.strength() > responder_card.strength();
  if (ls == trump) return true;
  return rs != trump;
}

GameState deal(std::span<const Card> permutation) {
  if (permutation.size() != static_cast<std::size_t>(kDeckSize)) {
    throw std::invalid_argument("deal: permutation has " + std::to_string(permutation.size()) +
                                " cards, expected 40");
  }
  CardSet seen;
  for (Card c : permutation) {
    if (c.index() >= kDeckSize || seen.contains(c)) {
      throw std::invalid_argument("deal: permutation repeats or contains an invalid card");
    }
    seen.insert(c);
  }

  GameState s;
  s.exposed = permutation[2 * kHandSize];
  s.trump = s.exposed.suit();
  for (int i = 0; i < kHandSize; ++i) {
    for (Seat seat : {Seat::G1, Seat::G2}) {
      const Card c = permutation[seat_index(seat) * kHandSize + i];
      s.hands[seat_index(seat)].add(c);
      if (c.suit() == s.trump) ++s.briscole_total[seat_index(seat)];
    }
  }
  std::copy(permutation.begin() + 2 * kHandSize + 1, permutation.end(), s.stock.begin());
  s.stock.back() = s.exposed;
  s.memory.insert(s.exposed);
  return s;
}

namespace {

[[noreturn]] void policy_contract_violation(PolicyId p, Card c) {
  std::fprintf(stderr, "briscola: policy %c played %s which is not in its hand\n",
               policy_code(p), to_string(c).c_str());
  std::abort();
}

Card play_from(GameState& s, Seat seat, PolicyId policy, std::optional<Card> opponent_card) {
  Hand& hand = s.hands[seat_index(seat)];
  const Observation obs{hand.cards(), opponent_card, s.trump, s.memory};
  const Card c = choose(policy, obs);
  if (!hand.remove(c)) policy_contract_violation(policy, c);
  return c;
}

void draw(GameState& s, Seat seat) {
  const Card c = s.stock[s.stock_top++];
  s.hands[seat_index(seat)].add(c);
  if (c.suit() == s.trump) ++s.briscole_total[seat_index(seat)];
}

}  // namespace

TrickRecord play_trick(GameState& s, PolicyId policy_g1, PolicyId policy_g2) {
  const std::array<PolicyId, 2> policies{policy_g1, policy_g2};
  const Seat leader = s.leader;
  const Seat responder = other(leader);
  const Card lead = play_from(s, leader, policies[seat_index(leader)], std::nullopt);
  const Card reply = play_from(s, responder, policies[seat_index(responder)], lead);

  const Seat winner = resolve_trick(lead, reply, s.trump) ? leader : responder;
  const int trick_points = lead.points() + reply.points();
  s.points[seat_index(winner)] += trick_points;
  if (s.stock_size() > 0) {
    draw(s, winner);
    draw(s, other(winner));
  }
  s.memory.insert(lead);
  s.memory.insert(reply);
  s.leader = winner;

  TrickRecord rec;
  rec.trick = s.trick_index++;
  rec.leader = leader;
  rec.card_g1 = leader == Seat::G1 ? lead : reply;
  rec.card_g2 = leader == Seat::G1 ? reply : lead;
  rec.winner = winner;
  rec.points = trick_points;
  rec.briscole_g1 = s.briscole_total[0];
  rec.briscole_g2 = s.briscole_total[1];
  return rec;
}

GameTranscript play_game(PolicyId policy_g1, PolicyId policy_g2,
                         std::span<const Card> permutation) {
  GameState s = deal(permutation);
  GameTranscript out;
  for (auto& rec : out.tricks) rec = play_trick(s, policy_g1, policy_g2);

  GameResult& r = out.result;
  r.trump = s.trump;
  r.points_g1 = s.points[0];
  r.points_g2 = s.points[1];
  r.briscole_g1 = s.briscole_total[0];
  r.briscole_g2 = s.briscole_total[1];
  if (r.points_g1 > kTotalPoints / 2) {
    r.outcome = Outcome::G1;
  } else if (r.points_g2 > kTotalPoints / 2) {
    r.outcome = Outcome::G2;
  } else {
    r.outcome = Outcome::Tie;
  }
  return out;
}

}  // namespace briscola
