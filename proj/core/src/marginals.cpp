// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/marginals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "zibayes/special_math.hpp"

namespace zibayes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_stats(const SufficientStats& s) {
  if (s.n < 1 || s.zero_count < 0 || s.zero_count > s.n || s.total < 0) {
    throw std::invalid_argument("invalid sufficient statistics");
  }
  if ((s.zero_count == s.n) != (s.total == 0)) {
    throw std::invalid_argument(
        "sufficient statistics violate (zero_count == n) <=> (total == 0)");
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("marginal: require gamma > 0");
}

// log of sum_{j=0}^{w} (n-j)!/(w-j)! * weight_j, where log_weight(j) supplies
// the j-dependent log factor.  Caller guarantees w < n.
template <typename F>
double log_j_sum(std::int64_t n, std::int64_t w, F log_weight) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(w) + 1);
  for (std::int64_t j = 0; j <= w; ++j) {
    terms.push_back(log_factorial(n - j) - log_factorial(w - j) +
                    log_weight(j));
  }
  return log_sum_exp(terms);
}

}  // namespace

std::string eval_mode_name(EvalMode m) {
  return m == EvalMode::OracleValidated ? "oracle-validated" : "paper-literal";
}

EvalMode eval_mode_from_name(const std::string& name) {
  if (name == "oracle-validated") return EvalMode::OracleValidated;
  if (name == "paper-literal") return EvalMode::PaperLiteral;
  throw std::invalid_argument("unknown evaluation mode: " + name);
}

bool MarginalResult::infinite() const { return std::isinf(log_marginal); }

MarginalResult log_marginal_poisson(const SufficientStats& stats) {
  check_stats(stats);
  const double phi_half = static_cast<double>(stats.total) + 0.5;
  MarginalResult r;
  r.family = Family::Poisson;
  r.log_marginal = log_gamma(phi_half) -
                   phi_half * std::log(static_cast<double>(stats.n)) -
                   stats.sum_log_factorial;
  return r;
}

MarginalResult log_marginal_zip(const SufficientStats& stats) {
  check_stats(stats);
  MarginalResult r;
  r.family = Family::Zip;
  if (stats.all_zero()) {
    // j = n term carries (n-j)^-(phi+1/2) at n-j = 0: the marginal diverges.
    r.log_marginal = kInf;
    r.degenerate_all_zero = true;
    return r;
  }
  const std::int64_t n = stats.n;
  const std::int64_t w = stats.zero_count;
  const double phi_half = static_cast<double>(stats.total) + 0.5;
  const double lg_phi = log_gamma(phi_half);
  r.log_marginal =
      log_factorial(w) - log_factorial(n + 1) - stats.sum_log_factorial +
      log_j_sum(n, w, [&](std::int64_t j) {
        return lg_phi - phi_half * std::log(static_cast<double>(n - j));
      });
  return r;
}

MarginalResult log_marginal_nb(const SufficientStats& stats,
                               double per_value_gamma_sum, double gamma,
                               EvalMode mode) {
  check_stats(stats);
  check_gamma(gamma);
  const double ng = static_cast<double>(stats.n) * gamma;
  const double phi_half = static_cast<double>(stats.total) + 0.5;
  const double lb = log_beta(phi_half, ng);
  const double g_minus_l = per_value_gamma_sum - stats.sum_log_factorial;
  MarginalResult r;
  r.family = Family::Nb;
  r.mode = mode;
  if (mode == EvalMode::OracleValidated) {
    r.log_marginal = 0.5 * std::log(gamma) + g_minus_l + lb;
  } else {
    r.log_marginal = -0.5 * std::log(gamma) + (ng + 0.5) * g_minus_l + lb;
  }
  return r;
}

MarginalResult log_marginal_zinb(const SufficientStats& stats,
                                 double per_value_gamma_sum, double gamma,
                                 EvalMode mode) {
  check_stats(stats);
  check_gamma(gamma);
  MarginalResult r;
  r.family = Family::Zinb;
  r.mode = mode;
  if (stats.all_zero()) {
    // j = n term carries Beta(phi+1/2, 0): the marginal diverges.
    r.log_marginal = kInf;
    r.degenerate_all_zero = true;
    return r;
  }
  const std::int64_t n = stats.n;
  const std::int64_t w = stats.zero_count;
  const double ng = static_cast<double>(n) * gamma;
  const double phi_half = static_cast<double>(stats.total) + 0.5;
  const double g_minus_l = per_value_gamma_sum - stats.sum_log_factorial;
  const double jsum = log_j_sum(n, w, [&](std::int64_t j) {
    return log_beta(phi_half, static_cast<double>(n - j) * gamma);
  });
  const double common = log_factorial(w) - log_factorial(n + 1) + jsum;
  if (mode == EvalMode::OracleValidated) {
    r.log_marginal = 0.5 * std::log(gamma) + g_minus_l + common;
  } else {
    r.log_marginal = -0.5 * std::log(gamma) + (ng + 0.5) * g_minus_l + common;
  }
  return r;
}

MarginalResult log_marginal(Family family, const CountSample& sample,
                            double gamma, EvalMode mode) {
  const SufficientStats stats = compute_suff_stats(sample);
  switch (family) {
    case Family::Poisson:
      return log_marginal_poisson(stats);
    case Family::Zip:
      return log_marginal_zip(stats);
    case Family::Nb:
      return log_marginal_nb(stats, per_value_gamma_sum(sample, gamma), gamma,
                             mode);
    case Family::Zinb:
      return log_marginal_zinb(stats, per_value_gamma_sum(sample, gamma),
                               gamma, mode);
  }
  throw std::logic_error("log_marginal: bad family");
}

}  // namespace zibayes
