// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zibayes/special_math.hpp"

namespace zibayes {

namespace {

constexpr double kGammaLo = 1e-8;
// Poisson-limit cap.  Beyond ~1e6 the lgamma differences in the NB
// likelihood drown the remaining gamma signal in rounding noise.
constexpr double kGammaHi = 1e6;
constexpr double kAlphaCap = 1.0 - 1e-8;

double finish(FitResult& r) {
  r.k = free_param_count(r.family);
  r.aic = 2.0 * r.k - 2.0 * r.loglik;
  return r.aic;
}

// sum_{k=0}^{y-1} 1/(gamma+k), the digamma difference psi(y+g) - psi(g)
double psi_diff(double gamma, std::int64_t y) {
  if (y <= 0) return 0.0;
  if (y <= 64) {
    double acc = 0.0;
    for (std::int64_t k = 0; k < y; ++k) {
      acc += 1.0 / (gamma + static_cast<double>(k));
    }
    return acc;
  }
  return digamma(static_cast<double>(y) + gamma) - digamma(gamma);
}

// Weighted NB profile score in gamma at the profiled mean kappa_hat:
//   s(g) = sum_i wt_i * [psi(y_i+g) - psi(g)] + W * ln(g/(g+kappa_hat)).
// Zero-count observations only enter through W.
struct WeightedCounts {
  const CountSample* sample;
  double zero_weight = 1.0;  // weight attached to every zero observation
  double total_weight = 0.0;
  double weighted_sum = 0.0;
};

WeightedCounts make_weighted(const CountSample& sample, double zero_weight) {
  WeightedCounts wc;
  wc.sample = &sample;
  wc.zero_weight = zero_weight;
  for (std::int64_t y : sample) {
    wc.total_weight += (y == 0) ? zero_weight : 1.0;
    wc.weighted_sum += static_cast<double>(y);
  }
  return wc;
}

double nb_profile_score(const WeightedCounts& wc, double gamma) {
  const double kappa_hat = wc.weighted_sum / wc.total_weight;
  double acc = 0.0;
  for (std::int64_t y : *wc.sample) {
    if (y > 0) acc += psi_diff(gamma, y);
  }
  // ln(gamma) - ln(gamma+kappa) cancels catastrophically at large gamma,
  // where the whole score is O(1/gamma^2); log1p keeps the sign honest.
  return acc - wc.total_weight * std::log1p(kappa_hat / gamma);
}

// Profiled NB fit on weighted counts.  Returns (gamma, kappa, at_boundary).
struct NbEstimate {
  double gamma = 1.0;
  double kappa = 1.0;
  bool at_boundary = false;
};

NbEstimate fit_nb_weighted(const WeightedCounts& wc) {
  NbEstimate est;
  est.kappa = wc.weighted_sum / wc.total_weight;
  if (!(est.kappa > 0.0)) {
    throw std::invalid_argument(
        "NB fit: all-zero effective sample is non-identifiable");
  }
  // The score is positive as gamma -> 0; a sign change on [lo, hi] marks
  // the interior optimum, otherwise the likelihood increases toward the
  // Poisson limit and gamma is capped.
  if (nb_profile_score(wc, kGammaHi) >= 0.0) {
    est.gamma = kGammaHi;
    est.at_boundary = true;
    return est;
  }
  double lo = std::log(kGammaLo), hi = std::log(kGammaHi);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (nb_profile_score(wc, std::exp(mid)) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13) break;
  }
  est.gamma = std::exp(0.5 * (lo + hi));
  return est;
}

FitResult fit_poisson(const CountSample& sample) {
  const SufficientStats st = compute_suff_stats(sample);
  FitResult r;
  r.family = Family::Poisson;
  r.converged = true;
  r.iterations = 0;
  if (st.all_zero()) {
    const double theta = 1e-12;
    r.params = PoissonParams{theta};
    r.loglik = -static_cast<double>(st.n) * theta;
    r.at_boundary = true;
  } else {
    const double theta =
        static_cast<double>(st.total) / static_cast<double>(st.n);
    r.params = PoissonParams{theta};
    r.loglik = -static_cast<double>(st.n) * theta +
               static_cast<double>(st.total) * std::log(theta) -
               st.sum_log_factorial;
  }
  finish(r);
  return r;
}

FitResult fit_nb(const CountSample& sample) {
  const WeightedCounts wc = make_weighted(sample, 1.0);
  const NbEstimate est = fit_nb_weighted(wc);
  FitResult r;
  r.family = Family::Nb;
  r.params = NbParams{est.gamma, est.kappa};
  r.loglik = log_likelihood(r.params, sample);
  r.converged = true;
  r.at_boundary = est.at_boundary;
  finish(r);
  return r;
}

double zip_loglik(const SufficientStats& st, double alpha, double theta) {
  const double w = static_cast<double>(st.zero_count);
  const double nw = static_cast<double>(st.n - st.zero_count);
  const double zero_mass =
      alpha + (1.0 - alpha) * std::exp(-theta);  // alpha in [0,1)
  double ll = nw * (std::log1p(-alpha) - theta) +
              static_cast<double>(st.total) * std::log(theta) -
              st.sum_log_factorial;
  if (st.zero_count > 0) ll += w * std::log(zero_mass);
  return ll;
}

FitResult fit_zip(const CountSample& sample, const FitOptions& opts) {
  const SufficientStats st = compute_suff_stats(sample);
  FitResult r;
  r.family = Family::Zip;
  if (st.all_zero()) {
    const double alpha = kAlphaCap, theta = 1e-8;
    r.params = ZipParams{alpha, theta};
    r.loglik = static_cast<double>(st.n) *
               std::log(alpha + (1.0 - alpha) * std::exp(-theta));
    r.converged = true;
    r.at_boundary = true;
    finish(r);
    return r;
  }
  const double n = static_cast<double>(st.n);
  const double w_count = static_cast<double>(st.zero_count);
  double theta = static_cast<double>(st.total) /
                 static_cast<double>(st.n - st.zero_count);
  double alpha = std::clamp(
      (w_count / n - std::exp(-theta)) / (1.0 - std::exp(-theta)), 0.0,
      kAlphaCap);
  double ll = zip_loglik(st, alpha, theta);
  r.loglik_trace.push_back(ll);
  for (int it = 1; it <= opts.max_iter; ++it) {
    r.iterations = it;
    // E-step: posterior inflation weight of a zero observation
    const double zero_mass = alpha + (1.0 - alpha) * std::exp(-theta);
    const double resp = (alpha > 0.0) ? alpha / zero_mass : 0.0;
    // M-step
    alpha = std::clamp(w_count * resp / n, 0.0, kAlphaCap);
    theta = static_cast<double>(st.total) / (n - w_count * resp);
    const double next = zip_loglik(st, alpha, theta);
    r.loglik_trace.push_back(next);
    if (std::abs(next - ll) < opts.tol) {
      r.converged = true;
      ll = next;
      break;
    }
    ll = next;
  }
  r.loglik = ll;
  r.params = ZipParams{alpha, theta};
  // EM cannot end below the alpha = 0 profile (the plain Poisson fit)
  const FitResult pois = fit_poisson(sample);
  if (pois.loglik > r.loglik) {
    r.params = ZipParams{0.0, std::get<PoissonParams>(pois.params).theta};
    r.loglik = pois.loglik;
    r.converged = true;
    r.at_boundary = true;
  }
  if (alpha == 0.0 || alpha == kAlphaCap) r.at_boundary = true;
  finish(r);
  return r;
}

double zinb_loglik(const CountSample& sample, const SufficientStats& st,
                   double alpha, double gamma, double kappa) {
  const double p0 = nb_zero_prob(kappa, gamma);
  double ll = 0.0;
  if (st.zero_count > 0) {
    ll += static_cast<double>(st.zero_count) *
          std::log(alpha + (1.0 - alpha) * p0);
  }
  const double lg = log_gamma(gamma);
  const double log_p0 = log_nb_zero_prob(kappa, gamma);
  const double log_ratio = std::log1p(gamma / kappa);
  for (std::int64_t y : sample) {
    if (y == 0) continue;
    ll += std::log1p(-alpha) + log_gamma(static_cast<double>(y) + gamma) -
          lg - log_factorial(y) + log_p0 -
          static_cast<double>(y) * log_ratio;
  }
  return ll;
}

FitResult fit_zinb(const CountSample& sample, const FitOptions& opts) {
  const SufficientStats st = compute_suff_stats(sample);
  if (st.all_zero()) {
    throw std::invalid_argument(
        "ZINB fit: all-zero sample is non-identifiable");
  }
  const double n = static_cast<double>(st.n);
  const double w_count = static_cast<double>(st.zero_count);

  FitResult nb_base = fit_nb(sample);
  NbParams base = std::get<NbParams>(nb_base.params);
  const double p0_base = nb_zero_prob(base.kappa, base.gamma);
  double alpha = std::clamp((w_count / n - p0_base) / (1.0 - p0_base), 0.0,
                            kAlphaCap);
  double gamma = base.gamma, kappa = base.kappa;

  FitResult r;
  r.family = Family::Zinb;
  double ll = zinb_loglik(sample, st, alpha, gamma, kappa);
  r.loglik_trace.push_back(ll);
  for (int it = 1; it <= opts.max_iter; ++it) {
    r.iterations = it;
    const double p0 = nb_zero_prob(kappa, gamma);
    const double zero_mass = alpha + (1.0 - alpha) * p0;
    const double resp = (alpha > 0.0) ? alpha / zero_mass : 0.0;
    alpha = std::clamp(w_count * resp / n, 0.0, kAlphaCap);
    const NbEstimate est = fit_nb_weighted(make_weighted(sample, 1.0 - resp));
    gamma = est.gamma;
    kappa = est.kappa;
    const double next = zinb_loglik(sample, st, alpha, gamma, kappa);
    r.loglik_trace.push_back(next);
    if (std::abs(next - ll) < opts.tol) {
      r.converged = true;
      ll = next;
      break;
    }
    ll = next;
  }
  r.loglik = ll;
  r.params = ZinbParams{alpha, gamma, kappa};
  if (nb_base.loglik > r.loglik) {
    r.params = ZinbParams{0.0, base.gamma, base.kappa};
    r.loglik = nb_base.loglik;
    r.converged = true;
    r.at_boundary = true;
  }
  if (alpha == 0.0 || alpha == kAlphaCap || gamma == kGammaHi) {
    r.at_boundary = true;
  }
  finish(r);
  return r;
}

}  // namespace

FitResult fit(Family family, const CountSample& sample,
              const FitOptions& opts) {
  switch (family) {
    case Family::Poisson: return fit_poisson(sample);
    case Family::Nb: return fit_nb(sample);
    case Family::Zip: return fit_zip(sample, opts);
    case Family::Zinb: return fit_zinb(sample, opts);
  }
  throw std::logic_error("fit: bad family");
}

Family aic_select(std::span<const FitResult> fits) {
  const FitResult* best = nullptr;
  for (const FitResult& f : fits) {
    if (!f.converged) continue;
    if (best == nullptr || f.aic < best->aic ||
        (f.aic == best->aic && f.k < best->k)) {
      best = &f;
    }
  }
  if (best == nullptr) {
    throw std::runtime_error("aic_select: no converged fit to select from");
  }
  return best->family;
}

VuongResult vuong_test(const FitResult& fit1, const FitResult& fit0,
                       const CountSample& sample, const VuongOptions& opts) {
  if (!fit1.converged || !fit0.converged) {
    throw std::invalid_argument("vuong_test: both fits must have converged");
  }
  const std::size_t n = sample.size();
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t y : sample) {
    const double m = log_pmf(fit1.params, y) - log_pmf(fit0.params, y);
    sum += m;
    sum_sq += m * m;
  }
  const double nd = static_cast<double>(n);
  const double mean = sum / nd;
  const double var = sum_sq / nd - mean * mean;
  if (!(var > 1e-300)) {
    throw std::runtime_error(
        "vuong_test: degenerate variance (models coincide pointwise)");
  }
  double numer = sum;
  if (opts.corrected) {
    numer -= 0.5 * static_cast<double>(fit1.k - fit0.k) * std::log(nd);
  }
  VuongResult r;
  r.n_effective = static_cast<std::int64_t>(n);
  r.z = numer / (std::sqrt(nd) * std::sqrt(var));
  if (r.z > opts.critical_value) {
    r.preferred = VuongPreference::Model1;
  } else if (r.z < -opts.critical_value) {
    r.preferred = VuongPreference::Model0;
  } else {
    r.preferred = VuongPreference::Indeterminate;
  }
  return r;
}

InflationCheck zero_inflation_check(const CountSample& sample, double tol) {
  const FitResult pois = fit_poisson(sample);
  const double theta = std::get<PoissonParams>(pois.params).theta;
  const SufficientStats st = compute_suff_stats(sample);
  InflationCheck c;
  const double expected =
      static_cast<double>(st.n) * std::exp(-theta);
  c.ratio = static_cast<double>(st.zero_count) / expected;
  c.inflated = c.ratio > 1.0 + tol;
  return c;
}

}  // namespace zibayes
