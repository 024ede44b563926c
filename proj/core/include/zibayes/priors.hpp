// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_PRIORS_HPP
#define ZIBAYES_PRIORS_HPP

#include <string>

#include "zibayes/models.hpp"

namespace zibayes {

// Which NB-family prior density to evaluate: the simple
// sqrt(gamma/[kappa(gamma+kappa)]) form used throughout the marginals, or
// the c2-weighted form derived for the zero-truncated NB (audit only; see
// zinb_c2 notes on its consistency).
enum class PriorVariant { Simple, OrthogonalTruncated };

struct PriorSpec {
  Family family = Family::Nb;
  double gamma_fixed = 1.001;  // dispersion held fixed in the Bayesian path
  PriorVariant variant = PriorVariant::Simple;
};

/// ln pi(theta) = -0.5*ln(theta) for the Poisson mean, theta > 0.
double poisson_prior_logdensity(double theta);

/// ln pi(kappa) = 0.5*[ln(gamma) - ln(kappa) - ln(gamma+kappa)].
double nb_prior_logdensity(double kappa, double gamma);

/// Weight of the zero-truncated Poisson Jeffreys prior:
/// c1(theta) = sqrt(1-(1+theta)exp(-theta)) / (1-exp(-theta)).
/// Strictly positive, -> 1 as theta -> inf, -> 1/sqrt(2) as theta -> 0+.
double zip_c1(double theta);

// c2(kappa) weight for the zero-truncated NB prior, evaluated exactly as
// displayed.  The expression under the square root is not guaranteed
// non-negative; callers that need the region reported use zinb_c2_checked.
struct C2Result {
  double radicand = 0.0;
  double value = 0.0;  // NaN when radicand < 0
  bool real = false;
};

C2Result zinb_c2_checked(double kappa, double gamma);

/// As zinb_c2_checked, but throws OracleError (a consistency-failure
/// diagnostic naming kappa and gamma) when the radicand is negative.
double zinb_c2(double kappa, double gamma);

/// The closed-form I(kappa) display for the zero-truncated NB.  Satisfies
/// c2(kappa)^2 * gamma/(kappa(kappa+gamma)) == I(kappa) algebraically;
/// whether it equals the actual Fisher information is decided by the
/// finite-difference oracle (see oracles.hpp) and recorded by the tests.
double truncated_nb_fisher_info(double kappa, double gamma);

/// Mean of the zero-truncated NB by direct pmf summation (tail cutoff
/// 1e-12).  This is the production value; the display in the derivation
/// of c2 is available separately for comparison.
double truncated_nb_mean(double kappa, double gamma);

/// The E(Y) display from the c2 derivation: gamma^2/(kappa*[1-(1+kappa/gamma)^-gamma]).
double truncated_nb_mean_display(double kappa, double gamma);

/// NB-family prior log-density under the given variant.
double zinb_prior_logdensity(double kappa, const PriorSpec& spec);

}  // namespace zibayes

#endif
