// End-to-end acceptance run: simulates the default tournament twice, analyses
// it and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "briscola/engine.hpp"
#include "briscola/report.hpp"
#include "briscola/stats.hpp"
#include "briscola/tournament.hpp"
#include "oracles.hpp"
#include "reference_game.hpp"

using namespace briscola;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(bool ok, const std::string& id, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

std::string num(double x, int precision = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << x;
  return s.str();
}

std::string sci(double x) {
  std::ostringstream s;
  s.setf(std::ios::scientific);
  s.precision(3);
  s << x;
  return s.str();
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

struct CompareResult {
  bool identical = false;
  std::int64_t newlines = 0;
};

// Streams two files in lockstep; also counts lines of the first.
CompareResult compare_files(const fs::path& a, const fs::path& b) {
  CompareResult r;
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return r;
  std::vector<char> ba(1 << 20), bb(1 << 20);
  bool same = true;
  while (true) {
    fa.read(ba.data(), static_cast<std::streamsize>(ba.size()));
    fb.read(bb.data(), static_cast<std::streamsize>(bb.size()));
    const auto na = fa.gcount(), nb = fb.gcount();
    if (na != nb || !std::equal(ba.begin(), ba.begin() + na, bb.begin())) same = false;
    for (std::streamsize i = 0; i < na; ++i) r.newlines += ba[i] == '\n';
    if (na == 0 && nb == 0) break;
  }
  r.identical = same;
  return r;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_trick_oracle() {
  int cases = 0, bad = 0;
  for (Suit t : kAllSuits) {
    for (Card a : canonical_deck()) {
      for (Card b : canonical_deck()) {
        if (a == b) continue;
        ++cases;
        const reference::Card ra{suit_ordinal(a.suit()), a.rank()};
        const reference::Card rb{suit_ordinal(b.suit()), b.rank()};
        bad += resolve_trick(a, b, t) != reference::leader_wins(ra, rb, suit_ordinal(t));
      }
    }
  }
  verdict(cases == 6240 && bad == 0, "trick-oracle",
          std::to_string(cases) + " combinations, " + std::to_string(bad) + " disagreements");
}

void check_stats_kernels() {
  using namespace stats;
  const Interval w = wilson_interval({436627, 693633}, 0.95);
  const bool wilson_ok = num(w.lower) == "0.6283" && num(w.upper) == "0.6306";

  double worst = 0.0;
  for (int n = 1; n <= 100; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (double p0 : {0.5, 0.49, 0.3}) {
        const double brute = oracle::binom_two_sided(k, n, p0);
        worst = std::max(worst, std::abs(binom_test_two_sided(k, n, p0) - brute) / brute);
      }
    }
  }

  const auto rows = oracle::synthetic_rows(200, 17, oracle::synthetic_beta());
  const LogisticFit fit = fit_logistic(rows);
  const double score_norm = score_vector(rows, fit.coefficients).norm();
  const Eigen::MatrixXd info = fisher_information(rows, oracle::synthetic_beta());
  const Eigen::MatrixXd hess = oracle::fd_hessian(rows, oracle::synthetic_beta());
  const double fisher_rel = (info + hess).norm() / info.norm();

  const double power = power_normal_approx(0.01, 110000, 0.05 / 8);

  verdict(wilson_ok && worst <= 1e-12 && fit.converged && score_norm < 1e-6 && fisher_rel <= 1e-4 &&
              power > 0.99,
          "stats-kernels",
          "wilson [" + num(w.lower) + ", " + num(w.upper) + "], binomial max rel err " +
              sci(worst) + ", score norm " + sci(score_norm) + ", fisher rel diff " +
              sci(fisher_rel) + ", power " + num(power, 6));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run for the full default tournament"};
  fs::path work_dir = "acceptance_runs";
  unsigned threads = 0;
  bool keep_second = false;
  app.add_option("--work-dir", work_dir, "Scratch directory for the two runs");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_flag("--keep-second", keep_second, "Keep the second run's output");
  CLI11_PARSE(app, argc, argv);

  check_trick_oracle();
  check_stats_kernels();

  TournamentConfig config;
  config.threads = threads;
  config.output_directory = work_dir / "run_a";
  TournamentConfig again = config;
  again.output_directory = work_dir / "run_b";

  auto t0 = std::chrono::steady_clock::now();
  const RunManifest ma = run_tournament(config);
  std::cerr << "run a: " << num(elapsed(t0), 1) << " s\n";
  t0 = std::chrono::steady_clock::now();
  run_tournament(again);
  std::cerr << "run b: " << num(elapsed(t0), 1) << " s\n";

  const CompareResult games_cmp = compare_files(config.output_directory / kGamesFile,
                                                again.output_directory / kGamesFile);
  const CompareResult tricks_cmp = compare_files(config.output_directory / kTricksFile,
                                                 again.output_directory / kTricksFile);
  verdict(games_cmp.identical && tricks_cmp.identical, "determinism",
          std::string("games.csv ") + (games_cmp.identical ? "identical" : "differs") +
              ", tricks.csv " + (tricks_cmp.identical ? "identical" : "differs"));
  if (!keep_second) fs::remove_all(again.output_directory);

  // Structural totals.
  const auto games = load_games(config.output_directory / kGamesFile);
  std::int64_t bad_points = 0, bad_briscole = 0;
  for (const GameSummary& g : games) {
    bad_points += g.final_points_g1 + g.final_points_g2 != kTotalPoints;
    bad_briscole += g.briscole_total_g1 + g.briscole_total_g2 != 10;
  }
  const std::int64_t game_rows = games_cmp.newlines - 1;
  const std::int64_t trick_rows = tricks_cmp.newlines - 1;
  verdict(game_rows == 999999 && trick_rows == 19999980 && ma.game_rows == game_rows &&
              ma.trick_rows == trick_rows && std::ssize(games) == game_rows && bad_points == 0 &&
              bad_briscole == 0,
          "structural-totals",
          std::to_string(game_rows) + " game rows, " + std::to_string(trick_rows) +
              " trick rows, " + std::to_string(bad_points) + " games off 120 points, " +
              std::to_string(bad_briscole) + " games off 10 briscole");

  report::ReportOptions opt;
  opt.run_dir = config.output_directory;
  opt.out_dir = config.output_directory / "report";
  t0 = std::chrono::steady_clock::now();
  const report::FullReport r = report::full_report(opt);
  std::cerr << "report: " << num(elapsed(t0), 1) << " s\n";
  for (const auto& s : r.sections) {
    if (!s.ok) std::cerr << "section " << s.name << " failed: " << s.message << "\n";
  }

  // Win-rate table.
  {
    const std::array<double, 9> expected = {0.490, 0.508, 0.547, 0.456, 0.483,
                                            0.520, 0.427, 0.449, 0.488};
    bool ok = r.winrates.has_value();
    std::string detail;
    if (ok) {
      for (std::size_t i = 0; i < 9; ++i) {
        const auto& c = (*r.winrates)[i];
        const bool cell_ok = within(c.win_rate_nontied, expected[i], 0.005);
        ok = ok && cell_ok;
        detail += pairing_code(c.pairing) + " " + num(c.win_rate_nontied, 3) +
                  (cell_ok ? "" : "(!)") + (i < 8 ? ", " : "");
      }
    }
    verdict(ok, "winrate-table", detail);
  }

  // Majority holder.
  {
    const stats::ChiSquareResult fixture = stats::chisq_yates(436627, 693633, 0.5);
    bool ok = r.majority.has_value() &&
              std::abs(fixture.statistic - 46542.0) <= 0.005 * 46542.0;
    std::string detail = "fixture chi2 " + num(fixture.statistic, 1);
    if (r.majority) {
      const auto& m = *r.majority;
      ok = ok && within(m.proportion.estimate(), 0.6295, 0.004) && m.wilson.width() <= 0.0025 &&
           m.chisq.p_value < 1e-15;
      detail = "proportion " + num(m.proportion.estimate()) + " (" +
               std::to_string(m.proportion.successes) + "/" + std::to_string(m.proportion.trials) +
               "), wilson width " + num(m.wilson.width()) + ", rerun chi2 " +
               num(m.chisq.statistic, 1) + " p " + sci(m.chisq.p_value) + ", " + detail;
    }
    verdict(ok, "majority-holder", detail);
  }

  // Tie rates.
  {
    const double tie = static_cast<double>(r.n_point_ties) / static_cast<double>(r.n_games);
    const double nonzero = static_cast<double>(r.n_nontied_with_majority) /
                           static_cast<double>(r.n_games - r.n_point_ties);
    verdict(within(tie, (999999.0 - 975263.0) / 999999.0, 0.003) &&
                within(nonzero, 693633.0 / 975263.0, 0.01),
            "tie-rates",
            "point-tied fraction " + num(tie) + ", non-tied with delta != 0 " + num(nonzero));
  }

  // Logistic model.
  {
    bool ok = r.logistic.has_value();
    std::string detail;
    if (ok) {
      const auto& f = *r.logistic;
      const std::array<double, 4> expected = {0.853, 0.740, 1.139, 1.349};
      for (int j = 1; j <= 5; ++j) {
        const double orr = f.odds_ratio(j);
        const auto ci = f.wald_odds_interval(j);
        const bool term_ok = (j < 5 ? within(orr, expected[j - 1], 0.02)
                                    : orr >= 1.21 && orr <= 1.23) &&
                             !ci.contains(1.0);
        ok = ok && term_ok;
        detail += std::string(stats::kLogisticTermNames[j]) + " " + num(orr, 3) + " [" +
                  num(ci.lower, 3) + ", " + num(ci.upper, 3) + "]" + (term_ok ? "" : "(!)") +
                  (j < 5 ? ", " : "");
      }
      ok = ok && f.converged;
    }
    verdict(ok, "logistic-model", detail);
  }

  // Trump-play profile.
  {
    bool ok = r.briscola_use.has_value();
    std::string detail;
    if (ok) {
      const std::array<double, 3> win = {0.881, 0.805, 0.808};
      const std::array<double, 3> pts = {5.91, 7.97, 8.04};
      const std::array<double, 3> waste = {0.492, 0.337, 0.333};
      const std::array<double, 3> played = {3289145, 3349881, 3360964};
      for (int p = 0; p < 3; ++p) {
        const auto& u = (*r.briscola_use)[p];
        const bool row_ok = within(u.win_rate(), win[p], 0.01) &&
                            within(u.mean_points_per_win(), pts[p], 0.15) &&
                            within(u.wasted_fraction(), waste[p], 0.01) &&
                            std::abs(static_cast<double>(u.n_played) - played[p]) <= 0.01 * played[p];
        ok = ok && row_ok;
        detail += std::string(1, policy_code(u.policy)) + " n " + std::to_string(u.n_played) +
                  " win " + num(u.win_rate(), 3) + " pts " + num(u.mean_points_per_win(), 2) +
                  " wasted " + num(u.wasted_fraction(), 3) + (row_ok ? "" : "(!)") +
                  (p < 2 ? "; " : "");
      }
    }
    verdict(ok, "trump-play-profile", detail);
  }

  // Dominance over the baseline.
  {
    bool ok = r.dominance.has_value() && r.dominance->rows.size() == 8;
    std::string detail;
    if (r.dominance) {
      for (const auto& row : r.dominance->rows) {
        const bool is_cc = row.pairing == Pairing{PolicyId::Counter, PolicyId::Counter};
        const bool row_ok = is_cc ? row.p_bonferroni > 0.05 : row.p_bonferroni < 1e-5;
        ok = ok && row_ok;
        detail += pairing_code(row.pairing) + " " + sci(row.p_bonferroni) + (row_ok ? "" : "(!)") +
                  " ";
      }
      detail += "(baseline " + num(r.dominance->baseline_rate) + ")";
    }
    verdict(ok, "dominance-pattern", detail);
  }

  // Break-even structure.
  {
    bool ok = r.breakeven.has_value();
    std::string detail;
    if (ok) {
      const auto& bins = *r.breakeven;
      const auto gc = report::breakeven_crossing(bins, {PolicyId::Greedy, PolicyId::Counter});
      const auto cg = report::breakeven_crossing(bins, {PolicyId::Counter, PolicyId::Greedy});
      ok = gc && cg && *gc >= -2.0 && *gc <= 0.0 && *cg >= 1.0 && *cg <= 3.0;
      detail = "GC crossing " + (gc ? num(*gc, 2) : std::string("none")) + ", CG crossing " +
               (cg ? num(*cg, 2) : std::string("none"));
      int monotone = 0;
      for (const Pairing& p : default_pairings()) {
        const report::BreakevenBin* lo = nullptr;
        const report::BreakevenBin* hi = nullptr;
        for (const auto& b : bins) {
          if (b.pairing != p) continue;
          if (b.delta_briscola < 0 && lo == nullptr) lo = &b;
          if (b.delta_briscola > 0) hi = &b;
        }
        if (lo && hi && hi->win_rate > lo->win_rate) ++monotone;
      }
      ok = ok && monotone == 9;
      detail += ", extreme-bin ordering holds in " + std::to_string(monotone) + "/9 pairings";
    }
    verdict(ok, "breakeven-structure", detail);
  }

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
