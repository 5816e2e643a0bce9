// briscola: run seeded tournaments and analyze their logs.
//
//   briscola simulate --out-dir run [--seed 42] [--games-per-pairing 111111]
//                     [--pairings all|GG,GC,...] [--trick-log | --no-trick-log]
//   briscola analyze|winrates|dominance|briscola-use|breakeven --run-dir run
//                     [--out-dir DIR] [--confidence 0.95]

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "briscola/report.hpp"
#include "briscola/tournament.hpp"

namespace {

namespace fs = std::filesystem;
using namespace briscola;

struct AnalysisArgs {
  fs::path run_dir;
  fs::path out_dir;
  double confidence = 0.95;

  fs::path resolved_out() const { return out_dir.empty() ? run_dir / "report" : out_dir; }
};

void add_analysis_flags(CLI::App* cmd, AnalysisArgs& args) {
  cmd->add_option("--run-dir", args.run_dir, "Directory written by `simulate`")->required();
  cmd->add_option("--out-dir", args.out_dir, "Where to write CSVs (default RUN_DIR/report)");
  cmd->add_option("--confidence", args.confidence, "Confidence level for intervals")
      ->check(CLI::Range(0.0, 1.0).description("in (0, 1)"))
      ->default_val(0.95);
}

std::vector<GameSummary> games_of(const AnalysisArgs& args) {
  return load_games(args.run_dir / kGamesFile);
}

int run_simulate(const TournamentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const RunManifest m = run_tournament(config);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("wrote %lld games and %lld tricks to %s in %.1f s\n",
              static_cast<long long>(m.game_rows), static_cast<long long>(m.trick_rows),
              config.output_directory.string().c_str(), secs);
  return 0;
}

int run_analyze(const AnalysisArgs& args) {
  report::ReportOptions opt;
  opt.run_dir = args.run_dir;
  opt.out_dir = args.resolved_out();
  opt.confidence = args.confidence;
  const auto r = report::full_report(opt);
  std::cout << r.summary_text;
  std::cout << "report written to " << opt.out_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded Monte Carlo tournaments for two-player Briscola"};
  app.require_subcommand(1);

  TournamentConfig config;
  std::string pairings = "all";
  auto* simulate = app.add_subcommand("simulate", "Run the round-robin tournament");
  simulate->add_option("--seed", config.master_seed, "Master seed")->default_val(kDefaultSeed);
  simulate->add_option("--games-per-pairing", config.games_per_pairing, "Games per pairing")
      ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()).description(">= 1"))
      ->default_val(kDefaultGamesPerPairing);
  simulate->add_option("--pairings", pairings, "all, or comma-separated codes like GG,GC")
      ->default_val("all");
  simulate->add_flag("--trick-log,!--no-trick-log", config.trick_log_enabled,
                     "Write the per-trick log (default on)")
      ->default_val(true);
  simulate->add_option("--out-dir", config.output_directory, "Output directory")->required();
  simulate->add_option("--threads", config.threads, "Worker threads (0 = all cores)")
      ->default_val(0);

  AnalysisArgs args;
  auto* analyze = app.add_subcommand("analyze", "Full report over a run directory");
  auto* winrates = app.add_subcommand("winrates", "Non-tied G1 win rate per pairing");
  auto* dominance = app.add_subcommand("dominance", "Exact binomial tests against GG");
  auto* use = app.add_subcommand("briscola-use", "Trump-play profile per policy");
  auto* breakeven = app.add_subcommand("breakeven", "Win rate by briscola imbalance");
  for (auto* cmd : {analyze, winrates, dominance, use, breakeven}) add_analysis_flags(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      config.pairings = parse_pairings(pairings);
      return run_simulate(config);
    }
    if (analyze->parsed()) return run_analyze(args);

    const RunManifest manifest = read_manifest(args.run_dir);
    const fs::path out = args.resolved_out();
    fs::create_directories(out);
    if (winrates->parsed()) {
      const auto table = report::winrate_table(games_of(args), args.confidence);
      report::write_winrates_csv(out / "winrates.csv", table);
      for (const auto& c : table) {
        std::printf("%s  %.4f [%.4f, %.4f]  n=%lld ties=%lld\n", pairing_code(c.pairing).c_str(),
                    c.win_rate_nontied, c.wilson.lower, c.wilson.upper,
                    static_cast<long long>(c.n_games), static_cast<long long>(c.n_ties));
      }
    } else if (dominance->parsed()) {
      const auto result = report::dominance_tests(games_of(args));
      report::write_dominance_csv(out / "dominance.csv", result);
      std::printf("baseline p0 = %.4f\n", result.baseline_rate);
      for (const auto& r : result.rows) {
        std::printf("%s  k=%lld n=%lld  p=%.3g  p_bonf=%.3g\n", pairing_code(r.pairing).c_str(),
                    static_cast<long long>(r.k), static_cast<long long>(r.n), r.p_raw,
                    r.p_bonferroni);
      }
    } else if (use->parsed()) {
      if (!manifest.config.trick_log_enabled) {
        throw std::runtime_error("briscola-use requires a trick log; this run was simulated with "
                                 "--no-trick-log");
      }
      const auto rows = report::briscola_use_profile(args.run_dir / kTricksFile);
      report::write_briscola_use_csv(out / "briscola_use.csv", rows);
      for (const auto& r : rows) {
        std::printf("%c  n_played=%lld  win=%.4f  pts/win=%.3f  wasted=%.4f\n",
                    policy_code(r.policy), static_cast<long long>(r.n_played), r.win_rate(),
                    r.mean_points_per_win(), r.wasted_fraction());
      }
    } else if (breakeven->parsed()) {
      const auto bins = report::breakeven_bins(games_of(args), args.confidence);
      report::write_breakeven_csv(out / "breakeven.csv", bins);
      std::printf("%zu bins written to %s\n", bins.size(), (out / "breakeven.csv").c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
