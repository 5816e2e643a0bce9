#include "briscola/tournament.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <system_error>
#include <thread>

#include <nlohmann/json.hpp>

#include "briscola/rng.hpp"

namespace briscola {
namespace {

const std::array<std::string, kDeckSize>& card_names() {
  static const auto names = [] {
    std::array<std::string, kDeckSize> out;
    for (int i = 0; i < kDeckSize; ++i) out[i] = to_string(Card::from_index(i));
    return out;
  }();
  return names;
}

std::string_view policy_field(PolicyId p) {
  static constexpr std::array<std::string_view, 3> kCodes = {"G", "H", "C"};
  return kCodes[static_cast<int>(p)];
}

PolicyId parse_policy_field(const CsvReader& reader, std::string_view text) {
  if (text.size() == 1) {
    if (auto p = parse_policy(text[0])) return *p;
  }
  reader.fail("invalid strategy '" + std::string(text) + "'");
}

Suit parse_suit_field(const CsvReader& reader, std::string_view text) {
  if (auto s = parse_suit(text)) return *s;
  reader.fail("invalid suit '" + std::string(text) + "'");
}

Outcome parse_outcome_field(const CsvReader& reader, std::string_view text) {
  if (text == "G1") return Outcome::G1;
  if (text == "G2") return Outcome::G2;
  if (text == "Tie") return Outcome::Tie;
  reader.fail("invalid outcome '" + std::string(text) + "'");
}

Seat parse_seat_field(const CsvReader& reader, std::string_view text) {
  if (text == "G1") return Seat::G1;
  if (text == "G2") return Seat::G2;
  reader.fail("invalid seat '" + std::string(text) + "'");
}

Card parse_card_field(const CsvReader& reader, std::string_view text) {
  if (auto c = parse_card(text)) return *c;
  reader.fail("invalid card '" + std::string(text) + "'");
}

int to_int(const CsvReader& reader, std::string_view text) {
  return static_cast<int>(parse_int_field(reader, text));
}

void write_game_row(CsvWriter& out, const GameSummary& g) {
  out.field(g.partita_id)
      .field(static_cast<std::int64_t>(g.match_id))
      .field(policy_field(g.strategy_g1))
      .field(policy_field(g.strategy_g2))
      .field(suit_name(g.trump_suit))
      .field(outcome_name(g.outcome))
      .field(static_cast<std::int64_t>(g.final_points_g1))
      .field(static_cast<std::int64_t>(g.final_points_g2))
      .field(static_cast<std::int64_t>(g.briscole_total_g1))
      .field(static_cast<std::int64_t>(g.briscole_total_g2))
      .field(static_cast<std::int64_t>(g.delta_briscola()));
  out.end_row();
}

void write_trick_rows(CsvWriter& out, const GameSummary& g, std::span<const TrickRecord> tricks) {
  const auto& names = card_names();
  for (const TrickRecord& t : tricks) {
    out.field(g.partita_id)
        .field(static_cast<std::int64_t>(g.match_id))
        .field(policy_field(g.strategy_g1))
        .field(policy_field(g.strategy_g2))
        .field(static_cast<std::int64_t>(t.trick))
        .field(suit_name(g.trump_suit))
        .field(names[t.card_g1.index()])
        .field(names[t.card_g2.index()])
        .field(seat_name(t.winner))
        .field(static_cast<std::int64_t>(t.points))
        .field(static_cast<std::int64_t>(t.briscole_g1))
        .field(static_cast<std::int64_t>(t.briscole_g2))
        .field(outcome_name(g.outcome))
        .field(static_cast<std::int64_t>(g.final_points_g1))
        .field(static_cast<std::int64_t>(g.final_points_g2));
    out.end_row();
  }
}

nlohmann::json manifest_json(const RunManifest& m) {
  nlohmann::json pairings = nlohmann::json::array();
  for (std::size_t i = 0; i < m.config.pairings.size(); ++i) {
    pairings.push_back({{"match_id", i + 1}, {"pairing", pairing_code(m.config.pairings[i])}});
  }
  return {
      {"schema_version", kSchemaVersion},
      {"master_seed", m.config.master_seed},
      {"games_per_pairing", m.config.games_per_pairing},
      {"pairings", pairings},
      {"trick_log", m.config.trick_log_enabled},
      {"rng",
       {{"generator", "xoshiro256** seeded from four SplitMix64 outputs"},
        {"game_seed", "mix(mix(mix(master_seed) ^ match_id) ^ game_index)"},
        {"mix", "z += 0x9E3779B97F4A7C15; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; "
                "z = (z ^ z>>27) * 0x94D049BB133111EB; z ^ z>>31"},
        {"uniform_below", "reject x >= n*floor(2^64/n), return x mod n"}}},
      {"files",
       {{"games", kGamesFile}, {"tricks", m.config.trick_log_enabled ? kTricksFile : ""}}},
      {"counts", {{"games", m.game_rows}, {"tricks", m.trick_rows}}},
  };
}

}  // namespace

std::vector<Pairing> default_pairings() {
  std::vector<Pairing> out;
  for (PolicyId a : kAllPolicies) {
    for (PolicyId b : kAllPolicies) out.push_back({a, b});
  }
  return out;
}

std::string pairing_code(const Pairing& p) {
  return {policy_code(p.g1), policy_code(p.g2)};
}

std::vector<Pairing> parse_pairings(std::string_view text) {
  if (text == "all") return default_pairings();
  std::vector<Pairing> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto a = item.size() == 2 ? parse_policy(item[0]) : std::nullopt;
    const auto b = item.size() == 2 ? parse_policy(item[1]) : std::nullopt;
    if (!a || !b) {
      throw std::invalid_argument("invalid pairing '" + std::string(item) +
                                  "', expected two of G/H/C such as GC");
    }
    out.push_back({*a, *b});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void TournamentConfig::validate() const {
  if (games_per_pairing < 1) throw std::invalid_argument("games_per_pairing must be >= 1");
  if (pairings.empty()) throw std::invalid_argument("at least one pairing is required");
}

GameSummary make_summary(std::int64_t partita_id, int match_id, Pairing pairing,
                         const GameResult& result) {
  GameSummary g;
  g.partita_id = partita_id;
  g.match_id = match_id;
  g.strategy_g1 = pairing.g1;
  g.strategy_g2 = pairing.g2;
  g.trump_suit = result.trump;
  g.outcome = result.outcome;
  g.final_points_g1 = result.points_g1;
  g.final_points_g2 = result.points_g2;
  g.briscole_total_g1 = result.briscole_g1;
  g.briscole_total_g2 = result.briscole_g2;
  return g;
}

GameTranscript simulate_game(std::uint64_t master_seed, int match_id, std::int64_t game_index,
                             Pairing pairing) {
  Xoshiro256 rng(game_seed(master_seed, static_cast<std::uint64_t>(match_id),
                           static_cast<std::uint64_t>(game_index)));
  Deck deck = canonical_deck();
  fisher_yates_shuffle(deck, rng);
  return play_game(pairing.g1, pairing.g2, deck);
}

void run_matchup(Pairing pairing, int match_id, std::int64_t n_games, std::uint64_t master_seed,
                 const GameSink& sink, std::int64_t first_partita_id, unsigned threads) {
  if (n_games < 1) throw std::invalid_argument("run_matchup: n_games must be >= 1");
  const unsigned workers = std::max(1U, threads);
  constexpr std::int64_t kBatch = 4096;
  std::vector<GameTranscript> batch(static_cast<std::size_t>(std::min(kBatch, n_games)));

  for (std::int64_t start = 1; start <= n_games; start += kBatch) {
    const auto count = static_cast<std::size_t>(std::min(kBatch, n_games - start + 1));
    auto work = [&](unsigned w) {
      for (std::size_t i = w; i < count; i += workers) {
        batch[i] = simulate_game(master_seed, match_id, start + static_cast<std::int64_t>(i),
                                 pairing);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto partita = first_partita_id + start - 1 + static_cast<std::int64_t>(i);
      sink(make_summary(partita, match_id, pairing, batch[i].result), batch[i].tricks);
    }
  }
}

RunManifest run_tournament(const TournamentConfig& config) {
  config.validate();
  namespace fs = std::filesystem;
  fs::create_directories(config.output_directory);
  const fs::path games_path = config.output_directory / kGamesFile;
  const fs::path tricks_path = config.output_directory / kTricksFile;
  const fs::path manifest_path = config.output_directory / kManifestFile;

  const unsigned threads =
      config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());

  RunManifest manifest{config, 0, 0};
  try {
    CsvWriter games(games_path);
    games.header(kGameColumns);
    std::optional<CsvWriter> tricks;
    if (config.trick_log_enabled) {
      tricks.emplace(tricks_path);
      tricks->header(kTrickColumns);
    }

    std::int64_t next_partita = 1;
    for (std::size_t m = 0; m < config.pairings.size(); ++m) {
      const int match_id = static_cast<int>(m + 1);
      run_matchup(
          config.pairings[m], match_id, config.games_per_pairing, config.master_seed,
          [&](const GameSummary& g, std::span<const TrickRecord> t) {
            write_game_row(games, g);
            if (tricks) write_trick_rows(*tricks, g, t);
          },
          next_partita, threads);
      next_partita += config.games_per_pairing;
    }
    games.close();
    manifest.game_rows = static_cast<std::int64_t>(games.rows());
    if (tricks) {
      tricks->close();
      manifest.trick_rows = static_cast<std::int64_t>(tricks->rows());
    }

    std::ofstream out(manifest_path);
    out << manifest_json(manifest).dump(2) << '\n';
    out.close();
    if (!out) throw std::runtime_error(manifest_path.string() + ": write failed");
  } catch (...) {
    std::error_code ec;
    fs::remove(games_path, ec);
    fs::remove(tricks_path, ec);
    fs::remove(manifest_path, ec);
    throw;
  }
  return manifest;
}

RunManifest read_manifest(const std::filesystem::path& run_dir) {
  const auto path = run_dir / kManifestFile;
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open manifest");
  nlohmann::json j;
  try {
    in >> j;
    RunManifest m;
    m.config.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.config.games_per_pairing = j.at("games_per_pairing").get<std::int64_t>();
    m.config.trick_log_enabled = j.at("trick_log").get<bool>();
    m.config.pairings.clear();
    for (const auto& p : j.at("pairings")) {
      auto parsed = parse_pairings(p.at("pairing").get<std::string>());
      m.config.pairings.push_back(parsed.front());
    }
    m.config.output_directory = run_dir;
    m.game_rows = j.at("counts").at("games").get<std::int64_t>();
    m.trick_rows = j.at("counts").at("tricks").get<std::int64_t>();
    return m;
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": malformed manifest: " + e.what());
  }
}

GameSummary parse_game_row(const CsvReader& reader, std::span<const std::string_view> f) {
  if (f.size() != kGameColumns.size()) {
    reader.fail("expected " + std::to_string(kGameColumns.size()) + " fields, got " +
                std::to_string(f.size()));
  }
  GameSummary g;
  g.partita_id = parse_int_field(reader, f[0]);
  g.match_id = to_int(reader, f[1]);
  g.strategy_g1 = parse_policy_field(reader, f[2]);
  g.strategy_g2 = parse_policy_field(reader, f[3]);
  g.trump_suit = parse_suit_field(reader, f[4]);
  g.outcome = parse_outcome_field(reader, f[5]);
  g.final_points_g1 = to_int(reader, f[6]);
  g.final_points_g2 = to_int(reader, f[7]);
  g.briscole_total_g1 = to_int(reader, f[8]);
  g.briscole_total_g2 = to_int(reader, f[9]);
  if (to_int(reader, f[10]) != g.delta_briscola()) {
    reader.fail("delta_briscola does not match briscole totals");
  }
  return g;
}

std::vector<GameSummary> load_games(const std::filesystem::path& games_csv) {
  CsvReader reader(games_csv);
  reader.expect_header(kGameColumns);
  std::vector<GameSummary> out;
  std::vector<std::string_view> fields;
  while (reader.next(fields)) out.push_back(parse_game_row(reader, fields));
  return out;
}

void for_each_trick_row(const std::filesystem::path& tricks_csv,
                        const std::function<void(const TrickRow&)>& visit) {
  CsvReader reader(tricks_csv);
  reader.expect_header(kTrickColumns);
  std::vector<std::string_view> f;
  TrickRow row;
  while (reader.next(f)) {
    if (f.size() != kTrickColumns.size()) {
      reader.fail("expected 15 fields, got " + std::to_string(f.size()));
    }
    row.partita_id = parse_int_field(reader, f[0]);
    row.match_id = to_int(reader, f[1]);
    row.strategy_g1 = parse_policy_field(reader, f[2]);
    row.strategy_g2 = parse_policy_field(reader, f[3]);
    row.mano = to_int(reader, f[4]);
    row.trump = parse_suit_field(reader, f[5]);
    row.card_g1 = parse_card_field(reader, f[6]);
    row.card_g2 = parse_card_field(reader, f[7]);
    row.trick_winner = parse_seat_field(reader, f[8]);
    row.trick_points = to_int(reader, f[9]);
    row.briscole_g1 = to_int(reader, f[10]);
    row.briscole_g2 = to_int(reader, f[11]);
    row.outcome = parse_outcome_field(reader, f[12]);
    row.final_points_g1 = to_int(reader, f[13]);
    row.final_points_g2 = to_int(reader, f[14]);
    visit(row);
  }
}

}  // namespace briscola
