// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/bayes_factor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "zibayes/special_math.hpp"

namespace zibayes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog32 = std::log(3.2);
const double kLog10 = std::log(10.0);

}  // namespace

Family comparison_m1(BfComparison c) {
  switch (c) {
    case BfComparison::NbVsPoisson: return Family::Nb;
    case BfComparison::ZipVsPoisson: return Family::Zip;
    case BfComparison::ZinbVsNb: return Family::Zinb;
    case BfComparison::ZinbVsZip: return Family::Zinb;
  }
  throw std::logic_error("comparison_m1: bad enum");
}

Family comparison_m0(BfComparison c) {
  switch (c) {
    case BfComparison::NbVsPoisson: return Family::Poisson;
    case BfComparison::ZipVsPoisson: return Family::Poisson;
    case BfComparison::ZinbVsNb: return Family::Nb;
    case BfComparison::ZinbVsZip: return Family::Zip;
  }
  throw std::logic_error("comparison_m0: bad enum");
}

std::string comparison_name(BfComparison c) {
  switch (c) {
    case BfComparison::NbVsPoisson: return "nb-vs-poisson";
    case BfComparison::ZipVsPoisson: return "zip-vs-poisson";
    case BfComparison::ZinbVsNb: return "zinb-vs-nb";
    case BfComparison::ZinbVsZip: return "zinb-vs-zip";
  }
  throw std::logic_error("comparison_name: bad enum");
}

BfComparison comparison_from_name(const std::string& name) {
  if (name == "nb-vs-poisson") return BfComparison::NbVsPoisson;
  if (name == "zip-vs-poisson") return BfComparison::ZipVsPoisson;
  if (name == "zinb-vs-nb") return BfComparison::ZinbVsNb;
  if (name == "zinb-vs-zip") return BfComparison::ZinbVsZip;
  throw std::invalid_argument("unknown comparison: " + name);
}

std::string evidence_name(Evidence e) {
  switch (e) {
    case Evidence::StrongM0: return "strong-m0";
    case Evidence::ModerateM0: return "moderate-m0";
    case Evidence::WeakM0: return "weak-m0";
    case Evidence::WeakM1: return "weak-m1";
    case Evidence::ModerateM1: return "moderate-m1";
    case Evidence::StrongM1: return "strong-m1";
  }
  throw std::logic_error("evidence_name: bad enum");
}

Evidence evidence_from_name(const std::string& name) {
  for (Evidence e : {Evidence::StrongM0, Evidence::ModerateM0,
                     Evidence::WeakM0, Evidence::WeakM1, Evidence::ModerateM1,
                     Evidence::StrongM1}) {
    if (evidence_name(e) == name) return e;
  }
  throw std::invalid_argument("unknown evidence band: " + name);
}

std::string evidence_description(Evidence e, BfComparison c) {
  const std::string m1 = family_name(comparison_m1(c));
  const std::string m0 = family_name(comparison_m0(c));
  switch (e) {
    case Evidence::StrongM0: return "strong presence of " + m0;
    case Evidence::ModerateM0: return "moderate presence of " + m0;
    case Evidence::WeakM0: return "weak presence of " + m0;
    case Evidence::WeakM1: return "weak presence of " + m1;
    case Evidence::ModerateM1: return "moderate presence of " + m1;
    case Evidence::StrongM1: return "strong presence of " + m1;
  }
  throw std::logic_error("evidence_description: bad enum");
}

Evidence interpret(double log_bf) {
  if (std::isnan(log_bf)) {
    throw std::invalid_argument("interpret: NaN log Bayes factor");
  }
  if (log_bf < -kLog10) return Evidence::StrongM0;
  if (log_bf < -kLog32) return Evidence::ModerateM0;
  if (log_bf < 0.0) return Evidence::WeakM0;
  if (log_bf < kLog32) return Evidence::WeakM1;
  if (log_bf < kLog10) return Evidence::ModerateM1;
  return Evidence::StrongM1;
}

double all_zero_limit(BfComparison comparison, std::int64_t n, double gamma) {
  if (n < 1) throw std::domain_error("all_zero_limit: require n >= 1");
  if (!(gamma > 0.0)) throw std::domain_error("all_zero_limit: gamma > 0");
  const double nd = static_cast<double>(n);
  const double ng = nd * gamma;
  switch (comparison) {
    case BfComparison::NbVsPoisson:
      // beta1(0) = sqrt(n) Gamma(n g) / (sqrt(g) Gamma(n g + 1/2))
      return 0.5 * std::log(nd) + log_gamma(ng) - 0.5 * std::log(gamma) -
             log_gamma(ng + 0.5);
    case BfComparison::ZipVsPoisson:
      return kInf;
    case BfComparison::ZinbVsNb: {
      // beta3(0) = sum_j Gamma((n-j)g) Gamma(n g + 1/2) /
      //            [n Gamma(n g) Gamma((n-j)g + 1/2)]
      std::vector<double> terms;
      for (std::int64_t j = 0; j < n; ++j) {
        const double mg = static_cast<double>(n - j) * gamma;
        terms.push_back(log_gamma(mg) + log_gamma(ng + 0.5) - std::log(nd) -
                        log_gamma(ng) - log_gamma(mg + 0.5));
      }
      return log_sum_exp(terms);
    }
    case BfComparison::ZinbVsZip: {
      // beta4(0) = g^-1/2 sum_j sqrt(n-j) Gamma((n-j)g) / Gamma((n-j)g + 1/2)
      std::vector<double> terms;
      for (std::int64_t j = 0; j < n; ++j) {
        const double m = static_cast<double>(n - j);
        terms.push_back(0.5 * std::log(m) + log_gamma(m * gamma) -
                        log_gamma(m * gamma + 0.5));
      }
      return -0.5 * std::log(gamma) + log_sum_exp(terms);
    }
  }
  throw std::logic_error("all_zero_limit: bad enum");
}

BfResult log_bayes_factor(const CountSample& sample, BfComparison comparison,
                          double gamma, EvalMode mode) {
  if (!(gamma > 0.0)) throw std::domain_error("log_bayes_factor: gamma > 0");
  const SufficientStats stats = compute_suff_stats(sample);
  BfResult r;
  r.comparison = comparison;
  r.mode = mode;
  if (stats.all_zero()) {
    r.log_bf = all_zero_limit(comparison, stats.n, gamma);
    r.degenerate_all_zero = true;
    r.interpretation = interpret(r.log_bf);
    return r;
  }
  const double g_sum = per_value_gamma_sum(sample, gamma);
  auto marginal = [&](Family f) -> double {
    switch (f) {
      case Family::Poisson: return log_marginal_poisson(stats).log_marginal;
      case Family::Zip: return log_marginal_zip(stats).log_marginal;
      case Family::Nb:
        return log_marginal_nb(stats, g_sum, gamma, mode).log_marginal;
      case Family::Zinb:
        return log_marginal_zinb(stats, g_sum, gamma, mode).log_marginal;
    }
    throw std::logic_error("log_bayes_factor: bad family");
  };
  r.log_bf = marginal(comparison_m1(comparison)) -
             marginal(comparison_m0(comparison));
  if (mode == EvalMode::PaperLiteral) {
    r.composed_log_bf = composed_log_bf(sample, comparison, gamma);
  }
  r.interpretation = interpret(r.log_bf);
  return r;
}

double composed_log_bf(const CountSample& sample, BfComparison comparison,
                       double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("composed_log_bf: gamma > 0");
  const SufficientStats stats = compute_suff_stats(sample);
  if (stats.all_zero()) {
    return all_zero_limit(comparison, stats.n, gamma);
  }
  const std::int64_t n = stats.n;
  const std::int64_t w = stats.zero_count;
  const double nd = static_cast<double>(n);
  const double ng = nd * gamma;
  const double phi_half = static_cast<double>(stats.total) + 0.5;
  const double g_sum = per_value_gamma_sum(sample, gamma);  // sum ln G(y+g)/G(g)
  const double l_sum = stats.sum_log_factorial;             // sum ln y!
  switch (comparison) {
    case BfComparison::NbVsPoisson:
      return phi_half * std::log(nd) + log_gamma(ng) - 0.5 * std::log(gamma) -
             log_gamma(phi_half + ng) + (ng + 0.5) * g_sum -
             (ng - 0.5) * l_sum;
    case BfComparison::ZipVsPoisson: {
      std::vector<double> terms;
      for (std::int64_t j = 0; j <= w; ++j) {
        terms.push_back(log_factorial(n - j) - log_factorial(w - j) -
                        phi_half * (std::log(static_cast<double>(n - j)) -
                                    std::log(nd)));
      }
      return log_factorial(w) - log_factorial(n + 1) + log_sum_exp(terms);
    }
    case BfComparison::ZinbVsNb: {
      std::vector<double> terms;
      for (std::int64_t j = 0; j <= w; ++j) {
        const double mg = static_cast<double>(n - j) * gamma;
        terms.push_back(log_factorial(n - j) + log_gamma(mg) -
                        log_factorial(w - j) - log_gamma(phi_half + mg));
      }
      return log_factorial(w) + log_gamma(phi_half + ng) -
             log_factorial(n + 1) - log_gamma(ng) + log_sum_exp(terms);
    }
    case BfComparison::ZinbVsZip: {
      std::vector<double> terms;
      for (std::int64_t j = 0; j <= w; ++j) {
        const double m = static_cast<double>(n - j);
        terms.push_back(log_gamma(m * gamma) + phi_half * std::log(m) -
                        log_gamma(phi_half + m * gamma));
      }
      return -0.5 * std::log(gamma) + (ng + 0.5) * g_sum -
             (ng - 0.5) * l_sum + log_sum_exp(terms);
    }
  }
  throw std::logic_error("composed_log_bf: bad enum");
}

}  // namespace zibayes
