// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_FIT_HPP
#define ZIBAYES_FIT_HPP

#include <span>
#include <vector>

#include "zibayes/counts.hpp"
#include "zibayes/models.hpp"

namespace zibayes {

struct FitOptions {
  int max_iter = 500;
  double tol = 1e-8;  // convergence threshold on the log-likelihood
};

struct FitResult {
  Family family = Family::Poisson;
  ModelParams params = PoissonParams{1.0};
  double loglik = 0.0;
  int k = 1;  // free parameters: Poisson 1, NB 2, ZIP 2, ZINB 3
  double aic = 0.0;
  bool converged = false;
  bool at_boundary = false;
  int iterations = 0;
  // per-iteration log-likelihoods for the EM fits (ascent diagnostics)
  std::vector<double> loglik_trace;
};

/// Maximum likelihood fit.  Poisson is closed form; NB profiles the
/// dispersion by safeguarded bisection on the score; ZIP/ZINB run EM over
/// the latent inflation indicator with the M-step reusing the
/// Poisson/NB fitters on weighted data.  NB-family fits on all-zero
/// samples are non-identifiable and throw std::invalid_argument.
FitResult fit(Family family, const CountSample& sample,
              const FitOptions& opts = {});

/// argmin AIC over the converged fits; exact ties go to the smaller-k
/// model.  Throws std::runtime_error when no fit converged.
Family aic_select(std::span<const FitResult> fits);

struct VuongOptions {
  double critical_value = 1.96;
  // subtract the BIC-style (k1-k0)/2 * ln n penalty from the numerator
  bool corrected = false;
};

enum class VuongPreference { Model1, Model0, Indeterminate };

struct VuongResult {
  double z = 0.0;
  std::int64_t n_effective = 0;
  VuongPreference preferred = VuongPreference::Indeterminate;
};

/// z = sum(m_i) / (sqrt(n) * sd(m_i)) with m_i the per-observation
/// log-likelihood ratios and sd the population standard deviation.
/// Throws std::runtime_error when sd is zero (models coincide pointwise)
/// and std::invalid_argument when either fit did not converge.
VuongResult vuong_test(const FitResult& fit1, const FitResult& fit0,
                       const CountSample& sample,
                       const VuongOptions& opts = {});

struct InflationCheck {
  double ratio = 0.0;  // observed zeros / Poisson-expected zeros
  bool inflated = false;
};

/// Fits Poisson and flags the sample inflated when observed zeros exceed
/// n*exp(-theta_hat) by more than the tolerance (default 5%).
InflationCheck zero_inflation_check(const CountSample& sample,
                                    double tol = 0.05);

}  // namespace zibayes

#endif
