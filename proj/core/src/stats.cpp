#include "briscola/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace briscola::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0, 1)");

  // Acklam (2003) coefficients.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  double x;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - kLow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement. Phi(x) - p is evaluated as (1 - p) - Q(x) in the upper
  // half to avoid cancellation.
  const double e = p > 0.5 ? (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2)
                           : normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

Interval wilson_interval(const Proportion& p, double confidence) {
  if (p.trials < 1) throw std::invalid_argument("wilson_interval: trials must be positive");
  if (p.successes < 0 || p.successes > p.trials) {
    throw std::invalid_argument("wilson_interval: successes must lie in [0, trials]");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("wilson_interval: confidence must be in (0, 1)");
  }
  const double z = normal_quantile(0.5 * (1.0 + confidence));
  const double n = static_cast<double>(p.trials);
  const double phat = p.estimate();
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  const double lower = p.successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double upper = p.successes == p.trials ? 1.0 : std::min(1.0, center + half);
  return {lower, upper};
}

double chisq1_upper_tail(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(0.5 * x));
}

ChiSquareResult chisq_yates(std::int64_t k, std::int64_t n, double p0) {
  if (n < 1) throw std::invalid_argument("chisq_yates: n must be positive");
  if (k < 0 || k > n) throw std::invalid_argument("chisq_yates: k must lie in [0, n]");
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("chisq_yates: p0 must be in (0, 1)");
  const double observed[2] = {static_cast<double>(k), static_cast<double>(n - k)};
  const double expected[2] = {static_cast<double>(n) * p0, static_cast<double>(n) * (1.0 - p0)};
  ChiSquareResult r;
  r.statistic = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double dev = std::abs(observed[i] - expected[i]) - 0.5;
    r.statistic += dev * dev / expected[i];
    if (expected[i] < 1.0) r.small_expected = true;
  }
  r.p_value = chisq1_upper_tail(r.statistic);
  return r;
}

double binom_test_two_sided(std::int64_t k, std::int64_t n, double p0) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("binom_test_two_sided: need 0 <= k <= n");
  }
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw std::invalid_argument("binom_test_two_sided: p0 must be in (0, 1)");
  }
  const double log_p = std::log(p0);
  const double log_q = std::log1p(-p0);
  const double log_nfact = std::lgamma(static_cast<double>(n) + 1.0);
  auto log_pmf = [&](std::int64_t i) {
    const double di = static_cast<double>(i);
    const double dn = static_cast<double>(n);
    return log_nfact - std::lgamma(di + 1.0) - std::lgamma(dn - di + 1.0) + di * log_p +
           (dn - di) * log_q;
  };
  const double threshold = log_pmf(k) + std::log1p(1e-7);

  long double total = 0.0L;
  for (std::int64_t i = 0; i <= n; ++i) {
    const double lp = log_pmf(i);
    if (lp <= threshold) total += std::exp(static_cast<long double>(lp));
  }
  return std::min(1.0, static_cast<double>(total));
}

std::vector<double> bonferroni(std::span<const double> p_values, std::int64_t m) {
  if (m < static_cast<std::int64_t>(p_values.size())) {
    throw std::invalid_argument("bonferroni: m must be at least the number of p-values");
  }
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) out.push_back(std::min(1.0, static_cast<double>(m) * p));
  return out;
}

double power_normal_approx(double delta, std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("power_normal_approx: n must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("power_normal_approx: alpha must be in (0, 1)");
  }
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  return normal_cdf(std::abs(delta) * std::sqrt(static_cast<double>(n)) / 0.5 - z);
}

Eigen::Matrix<double, kLogisticTerms, 1> covariates(const DesignMatrixRow& row) {
  Eigen::Matrix<double, kLogisticTerms, 1> x;
  x << 1.0, row.g1_is_h ? 1.0 : 0.0, row.g1_is_c ? 1.0 : 0.0, row.g2_is_h ? 1.0 : 0.0,
      row.g2_is_c ? 1.0 : 0.0, static_cast<double>(row.delta_briscola);
  return x;
}

std::vector<DesignMatrixRow> design_rows(std::span<const GameSummary> games) {
  std::vector<DesignMatrixRow> rows;
  rows.reserve(games.size());
  for (const GameSummary& g : games) {
    if (g.outcome == Outcome::Tie) continue;
    DesignMatrixRow r;
    r.g1_is_h = g.strategy_g1 == PolicyId::Hoarder;
    r.g1_is_c = g.strategy_g1 == PolicyId::Counter;
    r.g2_is_h = g.strategy_g2 == PolicyId::Hoarder;
    r.g2_is_c = g.strategy_g2 == PolicyId::Counter;
    r.delta_briscola = g.delta_briscola();
    r.y = g.outcome == Outcome::G1 ? 1 : 0;
    rows.push_back(r);
  }
  return rows;
}

namespace {

using Vec6 = Eigen::Matrix<double, kLogisticTerms, 1>;
using Mat6 = Eigen::Matrix<double, kLogisticTerms, kLogisticTerms>;

// log(sigmoid(eta)) and log(1 - sigmoid(eta)) without overflow.
double log_sigmoid(double eta) {
  return eta >= 0.0 ? -std::log1p(std::exp(-eta)) : eta - std::log1p(std::exp(eta));
}

double sigmoid(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

struct Accumulated {
  Mat6 information = Mat6::Zero();
  Vec6 score = Vec6::Zero();
  double log_likelihood = 0.0;
};

// Single pass in ascending row order.
Accumulated accumulate(std::span<const DesignMatrixRow> rows, const Vec6& beta) {
  Accumulated acc;
  for (const DesignMatrixRow& row : rows) {
    const Vec6 x = covariates(row);
    const double eta = x.dot(beta);
    const double mu = sigmoid(eta);
    const double w = mu * (1.0 - mu);
    acc.information.selfadjointView<Eigen::Lower>().rankUpdate(x, w);
    acc.score += (static_cast<double>(row.y) - mu) * x;
    acc.log_likelihood += row.y != 0 ? log_sigmoid(eta) : log_sigmoid(-eta);
  }
  acc.information = acc.information.selfadjointView<Eigen::Lower>();
  return acc;
}

Vec6 to_fixed(const Eigen::VectorXd& beta) {
  if (beta.size() != kLogisticTerms) {
    throw std::invalid_argument("coefficient vector must have 6 entries");
  }
  return beta;
}

// Flags every column that is (numerically) a combination of earlier ones.
void check_full_rank(std::span<const DesignMatrixRow> rows) {
  Mat6 gram = Mat6::Zero();
  for (const DesignMatrixRow& row : rows) {
    const Vec6 x = covariates(row);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0);
  }
  gram = gram.selfadjointView<Eigen::Lower>();

  std::vector<int> independent;
  for (int j = 0; j < kLogisticTerms; ++j) {
    const double diag = gram(j, j);
    bool collinear = diag <= 0.0;
    Eigen::VectorXd coef;
    if (!collinear && !independent.empty()) {
      const auto m = static_cast<Eigen::Index>(independent.size());
      Eigen::MatrixXd sub(m, m);
      Eigen::VectorXd cross(m);
      for (Eigen::Index a = 0; a < m; ++a) {
        cross(a) = gram(independent[a], j);
        for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = gram(independent[a], independent[b]);
      }
      coef = sub.ldlt().solve(cross);
      const double residual = diag - cross.dot(coef);
      collinear = residual <= 1e-9 * diag;
    }
    if (!collinear) {
      independent.push_back(j);
      continue;
    }
    std::ostringstream msg;
    msg << "fit_logistic: rank-deficient design, column '" << kLogisticTermNames[j] << "'";
    if (diag <= 0.0) {
      msg << " is identically zero";
    } else {
      msg << " is collinear with";
      for (Eigen::Index a = 0; a < coef.size(); ++a) {
        if (std::abs(coef(a)) > 1e-8) msg << " '" << kLogisticTermNames[independent[a]] << "'";
      }
    }
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double log_likelihood(std::span<const DesignMatrixRow> rows, const Eigen::VectorXd& beta) {
  return accumulate(rows, to_fixed(beta)).log_likelihood;
}

Eigen::VectorXd score_vector(std::span<const DesignMatrixRow> rows, const Eigen::VectorXd& beta) {
  return accumulate(rows, to_fixed(beta)).score;
}

Eigen::MatrixXd fisher_information(std::span<const DesignMatrixRow> rows,
                                   const Eigen::VectorXd& beta) {
  return accumulate(rows, to_fixed(beta)).information;
}

LogisticFit fit_logistic(std::span<const DesignMatrixRow> rows, const IrlsOptions& options) {
  if (rows.size() < static_cast<std::size_t>(kLogisticTerms + 1)) {
    throw std::invalid_argument("fit_logistic: need at least 7 rows");
  }
  check_full_rank(rows);

  Vec6 beta = Vec6::Zero();
  Accumulated acc = accumulate(rows, beta);
  double deviance = -2.0 * acc.log_likelihood;
  LogisticFit fit;

  for (int it = 1; it <= options.max_iterations; ++it) {
    beta += acc.information.ldlt().solve(acc.score);
    fit.iterations = it;
    if ((beta.array().abs() > options.separation_bound).any()) {
      throw std::runtime_error(
          "fit_logistic: did not converge, a coefficient exceeded the separation bound "
          "(complete separation)");
    }
    acc = accumulate(rows, beta);
    const double next = -2.0 * acc.log_likelihood;
    const bool done = std::abs(next - deviance) / (std::abs(next) + 0.1) < options.deviance_tolerance;
    deviance = next;
    if (done) {
      fit.converged = true;
      break;
    }
  }

  fit.coefficients = beta;
  fit.covariance = Eigen::MatrixXd(acc.information.inverse());
  fit.log_likelihood = acc.log_likelihood;
  fit.n_rows = static_cast<std::int64_t>(rows.size());
  return fit;
}

double LogisticFit::standard_error(int term) const { return std::sqrt(covariance(term, term)); }

double LogisticFit::odds_ratio(int term) const { return std::exp(coefficients(term)); }

Interval LogisticFit::wald_odds_interval(int term, double confidence) const {
  const double z = normal_quantile(0.5 * (1.0 + confidence));
  const double b = coefficients(term);
  const double se = standard_error(term);
  return {std::exp(b - z * se), std::exp(b + z * se)};
}

double LogisticFit::wald_p_value(int term) const {
  const double z = coefficients(term) / standard_error(term);
  return std::erfc(std::abs(z) / std::numbers::sqrt2);
}

MajorityResult majority_analysis(std::span<const GameSummary> games, double confidence) {
  Proportion p;
  for (const GameSummary& g : games) {
    const int delta = g.delta_briscola();
    if (g.outcome == Outcome::Tie || delta == 0) continue;
    ++p.trials;
    if ((delta > 0) == (g.outcome == Outcome::G1)) ++p.successes;
  }
  if (p.trials == 0) {
    throw std::invalid_argument(
        "majority_analysis: no game has both a points winner and a briscola majority");
  }
  return {p, wilson_interval(p, confidence), chisq_yates(p.successes, p.trials, 0.5)};
}

}  // namespace briscola::stats
