#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "briscola/csv.hpp"
#include "briscola/engine.hpp"
#include "briscola/policies.hpp"

namespace briscola {

struct Pairing {
  PolicyId g1 = PolicyId::Greedy;
  PolicyId g2 = PolicyId::Greedy;
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

// All nine ordered pairings, G1-major: GG GH GC HG HH HC CG CH CC.
std::vector<Pairing> default_pairings();

// Accepts "all" or a comma-separated list of two-letter codes such as "GG,CG".
// Throws std::invalid_argument on malformed input.
std::vector<Pairing> parse_pairings(std::string_view text);
std::string pairing_code(const Pairing& p);

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::int64_t kDefaultGamesPerPairing = 111'111;

struct TournamentConfig {
  std::uint64_t master_seed = kDefaultSeed;
  std::int64_t games_per_pairing = kDefaultGamesPerPairing;
  std::vector<Pairing> pairings = default_pairings();
  bool trick_log_enabled = true;
  std::filesystem::path output_directory = ".";
  // Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  // Throws std::invalid_argument when games_per_pairing < 1 or pairings is empty.
  void validate() const;
};

struct GameSummary {
  std::int64_t partita_id = 0;
  int match_id = 0;
  PolicyId strategy_g1 = PolicyId::Greedy;
  PolicyId strategy_g2 = PolicyId::Greedy;
  Suit trump_suit = Suit::Denari;
  Outcome outcome = Outcome::Tie;
  int final_points_g1 = 0;
  int final_points_g2 = 0;
  int briscole_total_g1 = 0;
  int briscole_total_g2 = 0;

  int delta_briscola() const { return briscole_total_g1 - briscole_total_g2; }
  friend bool operator==(const GameSummary&, const GameSummary&) = default;
};

GameSummary make_summary(std::int64_t partita_id, int match_id, Pairing pairing,
                         const GameResult& result);

// Shuffles the canonical deck with the game's substream and plays it.
GameTranscript simulate_game(std::uint64_t master_seed, int match_id, std::int64_t game_index,
                             Pairing pairing);

// Receives games strictly in ascending game index.
using GameSink = std::function<void(const GameSummary&, std::span<const TrickRecord>)>;

// Plays games 1..n_games of one matchup. PartitaId of game j is
// first_partita_id + j - 1. Games may run concurrently, emission order
// does not depend on it.
void run_matchup(Pairing pairing, int match_id, std::int64_t n_games, std::uint64_t master_seed,
                 const GameSink& sink, std::int64_t first_partita_id = 1, unsigned threads = 1);

// The 15 trick-log columns, verbatim.
inline constexpr std::array<std::string_view, 15> kTrickColumns = {
    "PartitaId",        "MatchId",          "StrategyG1",       "StrategyG2",
    "Mano",             "SemeBriscola",     "CartaG1",          "CartaG2",
    "VincitoreMano",    "PuntiMano",        "BriscoleTotaliG1", "BriscoleTotaliG2",
    "VincitorePartita", "PuntiFinaliG1",    "PuntiFinaliG2"};

inline constexpr std::array<std::string_view, 11> kGameColumns = {
    "partita_id",        "match_id",          "strategy_g1",      "strategy_g2",
    "trump_suit",        "outcome",           "final_points_g1",  "final_points_g2",
    "briscole_total_g1", "briscole_total_g2", "delta_briscola"};

inline constexpr std::string_view kTricksFile = "tricks.csv";
inline constexpr std::string_view kGamesFile = "games.csv";
inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr int kSchemaVersion = 1;

struct RunManifest {
  TournamentConfig config;
  std::int64_t game_rows = 0;
  std::int64_t trick_rows = 0;
};

// Runs every configured pairing (match ids 1.. in schedule order) and writes
// games.csv, tricks.csv (if enabled) and manifest.json into the output
// directory. On any failure the partially written files are removed and the
// exception is rethrown.
RunManifest run_tournament(const TournamentConfig& config);

// Reads manifest.json from a run directory.
RunManifest read_manifest(const std::filesystem::path& run_dir);

GameSummary parse_game_row(const CsvReader& reader, std::span<const std::string_view> f);

// Loads games.csv; throws std::runtime_error with file:line context on a bad row.
std::vector<GameSummary> load_games(const std::filesystem::path& games_csv);

// One parsed trick-log row.
struct TrickRow {
  std::int64_t partita_id = 0;
  int match_id = 0;
  PolicyId strategy_g1 = PolicyId::Greedy;
  PolicyId strategy_g2 = PolicyId::Greedy;
  int mano = 0;
  Suit trump = Suit::Denari;
  Card card_g1;
  Card card_g2;
  Seat trick_winner = Seat::G1;
  int trick_points = 0;
  int briscole_g1 = 0;
  int briscole_g2 = 0;
  Outcome outcome = Outcome::Tie;
  int final_points_g1 = 0;
  int final_points_g2 = 0;
};

// Streams tricks.csv row by row.
void for_each_trick_row(const std::filesystem::path& tricks_csv,
                        const std::function<void(const TrickRow&)>& visit);

}  // namespace briscola
