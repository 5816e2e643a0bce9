#include <benchmark/benchmark.h>

#include <vector>

#include "briscola/engine.hpp"
#include "briscola/rng.hpp"
#include "briscola/stats.hpp"
#include "briscola/tournament.hpp"

using namespace briscola;

static void BM_Shuffle(benchmark::State& state) {
  Xoshiro256 rng(1);
  Deck deck = canonical_deck();
  for (auto _ : state) {
    fisher_yates_shuffle(deck, rng);
    benchmark::DoNotOptimize(deck.data());
  }
}
BENCHMARK(BM_Shuffle);

static void BM_PlayGame(benchmark::State& state) {
  const auto policy = static_cast<PolicyId>(state.range(0));
  Xoshiro256 rng(2);
  Deck deck = canonical_deck();
  fisher_yates_shuffle(deck, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(play_game(policy, policy, deck));
  }
}
BENCHMARK(BM_PlayGame)->Arg(0)->Arg(1)->Arg(2);

static void BM_SimulateGame(benchmark::State& state) {
  std::int64_t j = 0;
  const Pairing p{PolicyId::Counter, PolicyId::Greedy};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_game(42, 7, ++j, p));
}
BENCHMARK(BM_SimulateGame);

static void BM_RunMatchup(benchmark::State& state) {
  const Pairing p{PolicyId::Hoarder, PolicyId::Counter};
  for (auto _ : state) {
    std::int64_t wins = 0;
    run_matchup(p, 6, state.range(0), 42, [&](const GameSummary& g, std::span<const TrickRecord>) {
      wins += g.outcome == Outcome::G1;
    });
    benchmark::DoNotOptimize(wins);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunMatchup)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_FitLogistic(benchmark::State& state) {
  std::vector<GameSummary> games;
  const auto pairings = default_pairings();
  for (std::size_t m = 0; m < pairings.size(); ++m) {
    run_matchup(pairings[m], static_cast<int>(m + 1), state.range(0), 42,
                [&](const GameSummary& g, std::span<const TrickRecord>) { games.push_back(g); });
  }
  const auto rows = stats::design_rows(games);
  for (auto _ : state) benchmark::DoNotOptimize(stats::fit_logistic(rows));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows.size()));
}
BENCHMARK(BM_FitLogistic)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
