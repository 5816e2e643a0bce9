#include "briscola/report.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace briscola::report {
namespace {

std::string_view code(PolicyId p) {
  static constexpr std::array<std::string_view, 3> kCodes = {"G", "H", "C"};
  return kCodes[static_cast<int>(p)];
}

std::string fixed(double x, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << x;
  return out.str();
}

std::string sci(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

}  // namespace

WinrateTable winrate_table(std::span<const GameSummary> games, double confidence) {
  WinrateTable table;
  for (PolicyId a : kAllPolicies) {
    for (PolicyId b : kAllPolicies) table[cell_index({a, b})].pairing = {a, b};
  }
  for (const GameSummary& g : games) {
    MatchupCell& cell = table[cell_index({g.strategy_g1, g.strategy_g2})];
    ++cell.n_games;
    if (g.outcome == Outcome::Tie) ++cell.n_ties;
    if (g.outcome == Outcome::G1) ++cell.n_g1_wins;
  }
  std::string missing;
  for (MatchupCell& cell : table) {
    const std::int64_t nontied = cell.n_games - cell.n_ties;
    if (nontied == 0) {
      missing += (missing.empty() ? "" : ", ") + pairing_code(cell.pairing);
      continue;
    }
    cell.win_rate_nontied = static_cast<double>(cell.n_g1_wins) / static_cast<double>(nontied);
    cell.wilson = stats::wilson_interval({cell.n_g1_wins, nontied}, confidence);
  }
  if (!missing.empty()) {
    throw std::invalid_argument("winrate_table: no non-tied games for pairing(s) " + missing);
  }
  return table;
}

DominanceResult dominance_tests(std::span<const GameSummary> games) {
  std::array<std::int64_t, 9> wins{};
  std::array<std::int64_t, 9> nontied{};
  for (const GameSummary& g : games) {
    if (g.outcome == Outcome::Tie) continue;
    const auto i = cell_index({g.strategy_g1, g.strategy_g2});
    ++nontied[i];
    if (g.outcome == Outcome::G1) ++wins[i];
  }
  const auto base = cell_index({PolicyId::Greedy, PolicyId::Greedy});
  if (nontied[base] == 0) {
    throw std::invalid_argument("dominance_tests: baseline pairing GG has no non-tied games");
  }
  DominanceResult out;
  out.baseline_rate = static_cast<double>(wins[base]) / static_cast<double>(nontied[base]);
  if (!(out.baseline_rate > 0.0 && out.baseline_rate < 1.0)) {
    throw std::invalid_argument("dominance_tests: baseline win rate is degenerate");
  }

  std::vector<double> raw;
  for (PolicyId a : kAllPolicies) {
    for (PolicyId b : kAllPolicies) {
      const Pairing p{a, b};
      const auto i = cell_index(p);
      if (i == base || nontied[i] == 0) continue;
      DominanceRow row;
      row.pairing = p;
      row.k = wins[i];
      row.n = nontied[i];
      row.p_raw = stats::binom_test_two_sided(row.k, row.n, out.baseline_rate);
      raw.push_back(row.p_raw);
      out.rows.push_back(row);
    }
  }
  const auto corrected = stats::bonferroni(raw, kDominanceFamilySize);
  for (std::size_t i = 0; i < out.rows.size(); ++i) out.rows[i].p_bonferroni = corrected[i];
  return out;
}

double BriscolaUseRow::win_rate() const {
  return n_played == 0 ? 0.0 : static_cast<double>(n_won) / static_cast<double>(n_played);
}

double BriscolaUseRow::mean_points_per_win() const {
  return n_won == 0 ? 0.0 : static_cast<double>(points_won) / static_cast<double>(n_won);
}

double BriscolaUseRow::wasted_fraction() const {
  return n_played == 0 ? 0.0 : static_cast<double>(n_wasted) / static_cast<double>(n_played);
}

void BriscolaUseAccumulator::add(const TrickRow& row) {
  const std::array<Card, 2> cards{row.card_g1, row.card_g2};
  const std::array<PolicyId, 2> policies{row.strategy_g1, row.strategy_g2};
  for (int seat = 0; seat < 2; ++seat) {
    if (cards[seat].suit() != row.trump) continue;
    BriscolaUseRow& r = rows_[static_cast<int>(policies[seat])];
    ++r.n_played;
    if (seat_index(row.trick_winner) == seat) {
      ++r.n_won;
      r.points_won += row.trick_points;
    }
    if (cards[1 - seat].points() == 0) ++r.n_wasted;
  }
}

std::array<BriscolaUseRow, 3> BriscolaUseAccumulator::rows() const { return rows_; }

std::int64_t BriscolaUseAccumulator::total_trump_plays() const {
  std::int64_t total = 0;
  for (const auto& r : rows_) total += r.n_played;
  return total;
}

std::array<BriscolaUseRow, 3> briscola_use_profile(const std::filesystem::path& tricks_csv) {
  if (!std::filesystem::exists(tricks_csv)) {
    throw std::runtime_error("briscola-use requires a trick log (run simulate with --trick-log): " +
                             tricks_csv.string() + " not found");
  }
  BriscolaUseAccumulator acc;
  for_each_trick_row(tricks_csv, [&](const TrickRow& row) { acc.add(row); });
  return acc.rows();
}

std::vector<BreakevenBin> breakeven_bins(std::span<const GameSummary> games, double confidence,
                                         std::int64_t min_games) {
  // (cell, delta + 10) -> (games, wins)
  std::array<std::array<std::pair<std::int64_t, std::int64_t>, 21>, 9> counts{};
  for (const GameSummary& g : games) {
    if (g.outcome == Outcome::Tie) continue;
    auto& c = counts[cell_index({g.strategy_g1, g.strategy_g2})][g.delta_briscola() + 10];
    ++c.first;
    if (g.outcome == Outcome::G1) ++c.second;
  }
  std::vector<BreakevenBin> bins;
  for (PolicyId a : kAllPolicies) {
    for (PolicyId b : kAllPolicies) {
      const Pairing p{a, b};
      for (int d = -10; d <= 10; ++d) {
        const auto [n, k] = counts[cell_index(p)][d + 10];
        if (n == 0 || n < min_games) continue;
        BreakevenBin bin;
        bin.pairing = p;
        bin.delta_briscola = d;
        bin.n_games = n;
        bin.n_g1_wins = k;
        bin.win_rate = static_cast<double>(k) / static_cast<double>(n);
        bin.wilson = stats::wilson_interval({k, n}, confidence);
        bins.push_back(bin);
      }
    }
  }
  return bins;
}

std::optional<double> breakeven_crossing(std::span<const BreakevenBin> bins, Pairing pairing) {
  const BreakevenBin* prev = nullptr;
  for (const BreakevenBin& bin : bins) {
    if (bin.pairing != pairing) continue;
    if (prev != nullptr && prev->win_rate < 0.5 && bin.win_rate >= 0.5) {
      const double t = (0.5 - prev->win_rate) / (bin.win_rate - prev->win_rate);
      return prev->delta_briscola + t * (bin.delta_briscola - prev->delta_briscola);
    }
    prev = &bin;
  }
  return std::nullopt;
}

void write_winrates_csv(const std::filesystem::path& path, const WinrateTable& table) {
  CsvWriter out(path);
  static constexpr std::array<std::string_view, 8> kCols = {
      "strategy_g1", "strategy_g2", "n_games", "n_ties", "n_g1_wins",
      "win_rate_nontied", "wilson_lo", "wilson_hi"};
  out.header(kCols);
  for (const MatchupCell& c : table) {
    out.field(code(c.pairing.g1))
        .field(code(c.pairing.g2))
        .field(c.n_games)
        .field(c.n_ties)
        .field(c.n_g1_wins)
        .field(c.win_rate_nontied)
        .field(c.wilson.lower)
        .field(c.wilson.upper);
    out.end_row();
  }
  out.close();
}

void write_dominance_csv(const std::filesystem::path& path, const DominanceResult& result) {
  CsvWriter out(path);
  static constexpr std::array<std::string_view, 7> kCols = {
      "strategy_g1", "strategy_g2", "k", "n", "p0", "p_raw", "p_bonferroni"};
  out.header(kCols);
  for (const DominanceRow& r : result.rows) {
    out.field(code(r.pairing.g1))
        .field(code(r.pairing.g2))
        .field(r.k)
        .field(r.n)
        .field(result.baseline_rate)
        .field(r.p_raw)
        .field(r.p_bonferroni);
    out.end_row();
  }
  out.close();
}

void write_briscola_use_csv(const std::filesystem::path& path,
                            std::span<const BriscolaUseRow> rows) {
  CsvWriter out(path);
  static constexpr std::array<std::string_view, 5> kCols = {
      "policy", "n_played", "win_rate", "mean_points_per_win", "wasted_fraction"};
  out.header(kCols);
  for (const BriscolaUseRow& r : rows) {
    out.field(code(r.policy))
        .field(r.n_played)
        .field(r.win_rate())
        .field(r.mean_points_per_win())
        .field(r.wasted_fraction());
    out.end_row();
  }
  out.close();
}

void write_breakeven_csv(const std::filesystem::path& path, std::span<const BreakevenBin> bins) {
  CsvWriter out(path);
  out.header(kBreakevenColumns);
  for (const BreakevenBin& b : bins) {
    out.field(code(b.pairing.g1))
        .field(code(b.pairing.g2))
        .field(static_cast<std::int64_t>(b.delta_briscola))
        .field(b.n_games)
        .field(b.win_rate)
        .field(b.wilson.lower)
        .field(b.wilson.upper);
    out.end_row();
  }
  out.close();
}

void write_logistic_csv(const std::filesystem::path& path, const stats::LogisticFit& fit,
                        double confidence) {
  CsvWriter out(path);
  static constexpr std::array<std::string_view, 8> kCols = {
      "term", "coefficient", "std_error", "odds_ratio", "or_lo", "or_hi", "p_value", "n"};
  out.header(kCols);
  for (int t = 0; t < stats::kLogisticTerms; ++t) {
    const auto ci = fit.wald_odds_interval(t, confidence);
    out.field(stats::kLogisticTermNames[t])
        .field(fit.coefficients(t))
        .field(fit.standard_error(t))
        .field(fit.odds_ratio(t))
        .field(ci.lower)
        .field(ci.upper)
        .field(fit.wald_p_value(t))
        .field(fit.n_rows);
    out.end_row();
  }
  out.close();
}

void write_majority_csv(const std::filesystem::path& path, const stats::MajorityResult& m) {
  CsvWriter out(path);
  static constexpr std::array<std::string_view, 7> kCols = {
      "successes", "trials", "proportion", "wilson_lo", "wilson_hi", "chisq_yates", "p_value"};
  out.header(kCols);
  out.field(m.proportion.successes)
      .field(m.proportion.trials)
      .field(m.proportion.estimate())
      .field(m.wilson.lower)
      .field(m.wilson.upper)
      .field(m.chisq.statistic)
      .field(m.chisq.p_value);
  out.end_row();
  out.close();
}

namespace {

// Runs one section, recording success or the exception message.
template <typename F>
void section(FullReport& report, std::string name, F&& body) {
  SectionStatus status{std::move(name), false, ""};
  try {
    body();
    status.ok = true;
  } catch (const std::exception& e) {
    status.message = e.what();
  }
  report.sections.push_back(std::move(status));
}

std::string render_summary(const FullReport& r, const ReportOptions& opt) {
  std::ostringstream s;
  const int pct = static_cast<int>(std::lround(opt.confidence * 100));
  s << "Briscola tournament report\n";
  s << "run: " << opt.run_dir.string() << "\n";
  s << "seed " << r.manifest.config.master_seed << ", " << r.manifest.config.games_per_pairing
    << " games per pairing, " << r.n_games << " games\n";
  s << "point ties: " << r.n_point_ties << " ("
    << fixed(static_cast<double>(r.n_point_ties) / static_cast<double>(r.n_games), 4) << ")\n\n";

  for (const SectionStatus& sec : r.sections) {
    s << "== " << sec.name << (sec.ok ? "" : " [unavailable]") << "\n";
    if (!sec.ok) {
      s << "  " << sec.message << "\n\n";
      continue;
    }
    if (sec.name == "majority" && r.majority) {
      const auto& m = *r.majority;
      s << "  majority holder wins " << m.proportion.successes << " / " << m.proportion.trials
        << " = " << fixed(m.proportion.estimate(), 4) << ", Wilson " << pct << "% ["
        << fixed(m.wilson.lower, 4) << ", " << fixed(m.wilson.upper, 4) << "]\n";
      s << "  chi-square (Yates) " << fixed(m.chisq.statistic, 1) << ", p = "
        << sci(m.chisq.p_value) << "\n";
    } else if (sec.name == "winrates" && r.winrates) {
      s << "  G1\\G2        G                     H                     C\n";
      for (PolicyId a : kAllPolicies) {
        s << "  " << code(a) << "   ";
        for (PolicyId b : kAllPolicies) {
          const auto& c = (*r.winrates)[cell_index({a, b})];
          s << "  " << fixed(c.win_rate_nontied, 3) << " [" << fixed(c.wilson.lower, 3) << ", "
            << fixed(c.wilson.upper, 3) << "]";
        }
        s << "\n";
      }
    } else if (sec.name == "dominance" && r.dominance) {
      s << "  baseline GG rate p0 = " << fixed(r.dominance->baseline_rate, 4) << "\n";
      for (const auto& row : r.dominance->rows) {
        s << "  " << pairing_code(row.pairing) << "  k=" << row.k << " n=" << row.n
          << "  p=" << sci(row.p_raw) << "  p_bonf=" << sci(row.p_bonferroni) << "\n";
      }
    } else if (sec.name == "logistic" && r.logistic) {
      const auto& fit = *r.logistic;
      s << "  N = " << fit.n_rows << ", iterations " << fit.iterations
        << (fit.converged ? "" : " (not converged)") << "\n";
      for (int t = 0; t < stats::kLogisticTerms; ++t) {
        const auto ci = fit.wald_odds_interval(t, opt.confidence);
        s << "  " << stats::kLogisticTermNames[t] << "  OR " << fixed(fit.odds_ratio(t), 3)
          << " [" << fixed(ci.lower, 3) << ", " << fixed(ci.upper, 3) << "]  p = "
          << sci(fit.wald_p_value(t)) << "\n";
      }
    } else if (sec.name == "briscola-use" && r.briscola_use) {
      for (const auto& row : *r.briscola_use) {
        s << "  " << code(row.policy) << "  n_played " << row.n_played << "  win "
          << fixed(row.win_rate(), 3) << "  pts/win " << fixed(row.mean_points_per_win(), 2)
          << "  wasted " << fixed(row.wasted_fraction(), 3) << "\n";
      }
    } else if (sec.name == "breakeven" && r.breakeven) {
      for (PolicyId a : kAllPolicies) {
        for (PolicyId b : kAllPolicies) {
          const auto x = breakeven_crossing(*r.breakeven, {a, b});
          s << "  " << code(a) << code(b) << "  50% crossing at delta "
            << (x ? fixed(*x, 2) : std::string("none")) << "\n";
        }
      }
    } else if (sec.name == "power") {
      s << "  delta " << opt.power_delta << ", n " << r.manifest.config.games_per_pairing
        << ", alpha " << opt.power_alpha << ": power " << fixed(r.power, 6) << "\n";
    }
    s << "\n";
  }
  return s.str();
}

}  // namespace

FullReport full_report(const ReportOptions& options) {
  namespace fs = std::filesystem;
  FullReport r;
  r.manifest = read_manifest(options.run_dir);
  const auto games = load_games(options.run_dir / kGamesFile);
  fs::create_directories(options.out_dir);
  r.n_games = static_cast<std::int64_t>(games.size());
  for (const GameSummary& g : games) {
    if (g.outcome == Outcome::Tie) {
      ++r.n_point_ties;
    } else if (g.delta_briscola() != 0) {
      ++r.n_nontied_with_majority;
    }
  }

  section(r, "majority", [&] {
    r.majority = stats::majority_analysis(games, options.confidence);
    write_majority_csv(options.out_dir / "majority.csv", *r.majority);
  });
  section(r, "winrates", [&] {
    r.winrates = winrate_table(games, options.confidence);
    write_winrates_csv(options.out_dir / "winrates.csv", *r.winrates);
  });
  section(r, "dominance", [&] {
    r.dominance = dominance_tests(games);
    write_dominance_csv(options.out_dir / "dominance.csv", *r.dominance);
  });
  section(r, "logistic", [&] {
    const auto rows = stats::design_rows(games);
    r.logistic = stats::fit_logistic(rows);
    write_logistic_csv(options.out_dir / "logistic.csv", *r.logistic, options.confidence);
  });
  section(r, "briscola-use", [&] {
    if (!r.manifest.config.trick_log_enabled) {
      throw std::runtime_error("trick log disabled for this run (simulate with --trick-log)");
    }
    r.briscola_use = briscola_use_profile(options.run_dir / kTricksFile);
    write_briscola_use_csv(options.out_dir / "briscola_use.csv", *r.briscola_use);
  });
  section(r, "breakeven", [&] {
    r.breakeven = breakeven_bins(games, options.confidence);
    write_breakeven_csv(options.out_dir / "breakeven.csv", *r.breakeven);
  });
  section(r, "power", [&] {
    r.power = stats::power_normal_approx(options.power_delta, r.manifest.config.games_per_pairing,
                                         options.power_alpha);
  });

  r.summary_text = render_summary(r, options);
  const auto summary_path = options.out_dir / "summary.txt";
  std::ofstream out(summary_path);
  out << r.summary_text;
  if (!out) throw std::runtime_error(summary_path.string() + ": write failed");
  return r;
}

}  // namespace briscola::report
