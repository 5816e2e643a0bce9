#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "briscola/stats.hpp"
#include "briscola/tournament.hpp"

namespace briscola::report {

using stats::Interval;

struct MatchupCell {
  Pairing pairing;
  std::int64_t n_games = 0;
  std::int64_t n_ties = 0;
  std::int64_t n_g1_wins = 0;
  double win_rate_nontied = 0.0;
  Interval wilson;
};

// Indexed by 3 * g1 + g2 in policy order G, H, C.
using WinrateTable = std::array<MatchupCell, 9>;

constexpr std::size_t cell_index(Pairing p) {
  return 3 * static_cast<std::size_t>(p.g1) + static_cast<std::size_t>(p.g2);
}

// Throws std::invalid_argument listing every pairing with no non-tied game.
WinrateTable winrate_table(std::span<const GameSummary> games, double confidence = 0.95);

inline constexpr std::int64_t kDominanceFamilySize = 8;

struct DominanceRow {
  Pairing pairing;
  std::int64_t k = 0;  // G1 wins
  std::int64_t n = 0;  // non-tied games
  double p_raw = 1.0;
  double p_bonferroni = 1.0;
};

struct DominanceResult {
  double baseline_rate = 0.0;  // non-tied G1 win rate of Greedy vs Greedy
  std::vector<DominanceRow> rows;
};

// Exact binomial test of every non-baseline pairing present against the
// baseline win rate held fixed, Bonferroni-corrected over eight tests.
// Throws std::invalid_argument if the baseline pairing has no non-tied game.
DominanceResult dominance_tests(std::span<const GameSummary> games);

struct BriscolaUseRow {
  PolicyId policy = PolicyId::Greedy;
  std::int64_t n_played = 0;
  std::int64_t n_won = 0;
  std::int64_t n_wasted = 0;  // opposing card worth zero points
  std::int64_t points_won = 0;

  double win_rate() const;
  double mean_points_per_win() const;
  double wasted_fraction() const;
};

// Pools trump plays per policy over both seats.
class BriscolaUseAccumulator {
 public:
  void add(const TrickRow& row);
  std::array<BriscolaUseRow, 3> rows() const;
  std::int64_t total_trump_plays() const;

 private:
  std::array<BriscolaUseRow, 3> rows_{
      BriscolaUseRow{PolicyId::Greedy}, BriscolaUseRow{PolicyId::Hoarder},
      BriscolaUseRow{PolicyId::Counter}};
};

// Throws std::runtime_error mentioning --trick-log if the file is absent.
std::array<BriscolaUseRow, 3> briscola_use_profile(const std::filesystem::path& tricks_csv);

struct BreakevenBin {
  Pairing pairing;
  int delta_briscola = 0;
  std::int64_t n_games = 0;
  std::int64_t n_g1_wins = 0;
  double win_rate = 0.0;
  Interval wilson;
};

inline constexpr std::int64_t kMinBinGames = 50;

// Non-tied games grouped by (pairing, delta); bins with fewer than
// min_games games are dropped. Ordered by pairing then delta.
std::vector<BreakevenBin> breakeven_bins(std::span<const GameSummary> games,
                                         double confidence = 0.95,
                                         std::int64_t min_games = kMinBinGames);

// First upward crossing of a 0.5 win rate between adjacent populated bins of
// one pairing, by linear interpolation. Empty when the curve never crosses.
std::optional<double> breakeven_crossing(std::span<const BreakevenBin> bins, Pairing pairing);

inline constexpr std::array<std::string_view, 7> kBreakevenColumns = {
    "strategy_g1", "strategy_g2", "delta", "n", "win_rate", "wilson_lo", "wilson_hi"};

void write_winrates_csv(const std::filesystem::path& path, const WinrateTable& table);
void write_dominance_csv(const std::filesystem::path& path, const DominanceResult& result);
void write_briscola_use_csv(const std::filesystem::path& path,
                            std::span<const BriscolaUseRow> rows);
void write_breakeven_csv(const std::filesystem::path& path, std::span<const BreakevenBin> bins);
void write_logistic_csv(const std::filesystem::path& path, const stats::LogisticFit& fit,
                        double confidence);
void write_majority_csv(const std::filesystem::path& path, const stats::MajorityResult& m);

struct ReportOptions {
  std::filesystem::path run_dir;
  std::filesystem::path out_dir;
  double confidence = 0.95;
  // Power computation: detectable deviation and family-wise level.
  double power_delta = 0.01;
  double power_alpha = 0.05 / 8.0;
};

struct SectionStatus {
  std::string name;
  bool ok = false;
  std::string message;
};

struct FullReport {
  RunManifest manifest;
  std::int64_t n_games = 0;
  std::int64_t n_point_ties = 0;
  std::int64_t n_nontied_with_majority = 0;
  std::optional<stats::MajorityResult> majority;
  std::optional<WinrateTable> winrates;
  std::optional<DominanceResult> dominance;
  std::optional<stats::LogisticFit> logistic;
  std::optional<std::array<BriscolaUseRow, 3>> briscola_use;
  std::optional<std::vector<BreakevenBin>> breakeven;
  double power = 0.0;
  std::vector<SectionStatus> sections;
  std::string summary_text;
};

// Runs every analysis on a run directory, writes one CSV per table plus
// summary.txt into out_dir, and records a status per section. A failing
// section does not stop the others. Throws only if the manifest or
// games.csv cannot be read.
FullReport full_report(const ReportOptions& options);

}  // namespace briscola::report
