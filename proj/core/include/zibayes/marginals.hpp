// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_MARGINALS_HPP
#define ZIBAYES_MARGINALS_HPP

#include <string>

#include "zibayes/counts.hpp"
#include "zibayes/models.hpp"

namespace zibayes {

// The NB-family marginal displays carry a product term raised to the power
// n*gamma + 1/2 and a 1/sqrt(gamma) prefactor.  Brute-force quadrature of
// likelihood x prior disagrees with both and instead supports
//
//   m_NB   = sqrt(gamma) * prod_i[G(y_i+gamma)/(y_i! G(gamma))] * B(phi+1/2, n*gamma)
//   m_ZINB = sqrt(gamma) * prod_i[...] * w!/(n+1)! *
//            sum_j (n-j)!/(w-j)! * B(phi+1/2, (n-j)*gamma)
//
// (the two agree exactly at gamma = 1, where the product term is 1).
// OracleValidated (the default everywhere) evaluates the corrected forms;
// PaperLiteral evaluates the displays verbatim for auditability.
enum class EvalMode { OracleValidated, PaperLiteral };

std::string eval_mode_name(EvalMode m);
EvalMode eval_mode_from_name(const std::string& name);

struct MarginalResult {
  double log_marginal = 0.0;  // +inf sentinel for ZIP/ZINB on all-zero data
  Family family = Family::Poisson;
  EvalMode mode = EvalMode::OracleValidated;
  bool degenerate_all_zero = false;

  bool infinite() const;
};

/// m = Gamma(phi+1/2) / (n^(phi+1/2) prod y_i!), in logs.
MarginalResult log_marginal_poisson(const SufficientStats& stats);

/// w!/((n+1)! prod y_i!) sum_{j=0}^{w} (n-j)!/(w-j)! Gamma(phi+1/2) (n-j)^-(phi+1/2),
/// log_sum_exp over j.  All-zero samples return the +inf sentinel (the j=n
/// term diverges).
MarginalResult log_marginal_zip(const SufficientStats& stats);

/// NB marginal; per_value_gamma_sum = sum_i[lnG(y_i+gamma) - lnG(gamma)].
MarginalResult log_marginal_nb(const SufficientStats& stats,
                               double per_value_gamma_sum, double gamma,
                               EvalMode mode = EvalMode::OracleValidated);

/// ZINB marginal with log_sum_exp over j in [0, w]; +inf sentinel on
/// all-zero samples.
MarginalResult log_marginal_zinb(const SufficientStats& stats,
                                 double per_value_gamma_sum, double gamma,
                                 EvalMode mode = EvalMode::OracleValidated);

/// Convenience: compute the marginal for any family from the raw sample.
MarginalResult log_marginal(Family family, const CountSample& sample,
                            double gamma,
                            EvalMode mode = EvalMode::OracleValidated);

}  // namespace zibayes

#endif
