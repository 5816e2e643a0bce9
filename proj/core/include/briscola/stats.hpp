#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "briscola/tournament.hpp"

namespace briscola::stats {

struct Proportion {
  std::int64_t successes = 0;
  std::int64_t trials = 0;

  double estimate() const { return static_cast<double>(successes) / static_cast<double>(trials); }
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x) const { return lower <= x && x <= upper; }
  double width() const { return upper - lower; }
};

// Standard normal CDF via erfc.
double normal_cdf(double x);

// Inverse standard normal CDF. Acklam's rational approximation refined by
// one Halley step against normal_cdf; absolute error below 1e-13 on (0, 1).
// Throws std::invalid_argument outside (0, 1).
double normal_quantile(double p);

// Wilson score interval. Throws std::invalid_argument if trials < 1,
// successes outside [0, trials] or confidence outside (0, 1).
Interval wilson_interval(const Proportion& p, double confidence = 0.95);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool small_expected = false;  // some expected cell count below 1
};

// One-d.f. goodness of fit of (k, n - k) against (n p0, n (1 - p0)) with the
// Yates continuity correction: sum (|O - E| - 0.5)^2 / E.
ChiSquareResult chisq_yates(std::int64_t k, std::int64_t n, double p0);

// Upper tail of the chi-square distribution with one degree of freedom.
double chisq1_upper_tail(double x);

// Exact two-sided binomial p-value, minimum-likelihood convention: total
// probability of outcomes no more likely than k (relative slack 1e-7, as in R).
double binom_test_two_sided(std::int64_t k, std::int64_t n, double p0);

// min(1, m p) for every p. Throws std::invalid_argument if m < p_values.size().
std::vector<double> bonferroni(std::span<const double> p_values, std::int64_t m);

// Power of a two-sided level-alpha test of p = 0.5 against p = 0.5 + delta:
// Phi(|delta| sqrt(n) / 0.5 - z_{1 - alpha/2}).
double power_normal_approx(double delta, std::int64_t n, double alpha);

// Treatment-coded row for the outcome model, reference policy Greedy.
struct DesignMatrixRow {
  bool g1_is_h = false;
  bool g1_is_c = false;
  bool g2_is_h = false;
  bool g2_is_c = false;
  int delta_briscola = 0;
  int y = 0;  // 1 if G1 won
};

inline constexpr int kLogisticTerms = 6;
inline constexpr std::array<const char*, kLogisticTerms> kLogisticTermNames = {
    "(Intercept)", "G1=H", "G1=C", "G2=H", "G2=C", "delta_briscola"};

// Covariate vector (1, g1_is_h, g1_is_c, g2_is_h, g2_is_c, delta).
Eigen::Matrix<double, kLogisticTerms, 1> covariates(const DesignMatrixRow& row);

// Rows for every game not tied on points.
std::vector<DesignMatrixRow> design_rows(std::span<const GameSummary> games);

struct LogisticFit {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXd covariance;
  bool converged = false;
  int iterations = 0;
  double log_likelihood = 0.0;
  std::int64_t n_rows = 0;

  double standard_error(int term) const;
  double odds_ratio(int term) const;
  // exp(beta +- z SE).
  Interval wald_odds_interval(int term, double confidence = 0.95) const;
  // Two-sided Wald test of beta = 0.
  double wald_p_value(int term) const;
};

struct IrlsOptions {
  int max_iterations = 50;
  // Relative deviance change |D_k - D_{k-1}| / (|D_k| + 0.1) that stops the loop.
  double deviance_tolerance = 1e-10;
  double separation_bound = 30.0;
};

// Maximum-likelihood logistic fit by iteratively reweighted least squares
// starting from zero. Throws std::invalid_argument for fewer than 7 rows or a
// rank-deficient design (the message names the collinear columns), and
// std::runtime_error when a coefficient exceeds the separation bound.
LogisticFit fit_logistic(std::span<const DesignMatrixRow> rows, const IrlsOptions& options = {});

// Pieces of the likelihood at a coefficient vector.
double log_likelihood(std::span<const DesignMatrixRow> rows, const Eigen::VectorXd& beta);
Eigen::VectorXd score_vector(std::span<const DesignMatrixRow> rows, const Eigen::VectorXd& beta);
Eigen::MatrixXd fisher_information(std::span<const DesignMatrixRow> rows,
                                   const Eigen::VectorXd& beta);

struct MajorityResult {
  Proportion proportion;
  Interval wilson;
  ChiSquareResult chisq;
};

// Among games with a points winner and a briscola majority, how often the
// majority holder wins. Throws std::invalid_argument when no game qualifies.
MajorityResult majority_analysis(std::span<const GameSummary> games, double confidence = 0.95);

}  // namespace briscola::stats
