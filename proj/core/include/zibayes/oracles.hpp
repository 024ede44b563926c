// Apache License, Version 2.0, refer to LICENSE.txt
//
// Independent brute-force references used by the test suite and the
// oracle-check subcommand.  Production Bayes factor computation never calls
// anything in this header.

#ifndef ZIBAYES_ORACLES_HPP
#define ZIBAYES_ORACLES_HPP

#include <cstdint>
#include <functional>

#include "zibayes/counts.hpp"
#include "zibayes/models.hpp"

namespace zibayes {

enum class DomainTransform {
  Auto,             // log-substitution for theta, beta-substitution for kappa
  LogSubstitution,  // theta = e^u over (0, inf)
  BetaSubstitution  // t = kappa/(gamma+kappa) mapping (0, inf) -> (0, 1)
};

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;  // >= 16
  DomainTransform transform = DomainTransform::Auto;
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
/// Throws OracleError when the subdivision budget is exhausted before the
/// error estimate meets max(abs_tol, rel_tol*|I|).
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadConfig& cfg);

/// log integral of likelihood x Jeffreys prior for the given family,
/// computed by adaptive quadrature of the max-shifted integrand.  The
/// inflation parameter of ZIP/ZINB is integrated in closed form over its
/// uniform prior.  Small samples only (n <= 20, counts <= 50): this is a
/// test oracle, not a production path.  All-zero samples make the ZIP/ZINB
/// integrals diverge; divergence is detected by truncation growth and
/// reported as +inf.
double quad_log_marginal(Family family, const CountSample& sample,
                         double gamma, const QuadConfig& cfg = {});

/// Same, but the inflation parameter is integrated by nested quadrature
/// instead of the closed form (cross-check; ZIP/ZINB only).
double quad_log_marginal_nested_alpha(Family family, const CountSample& sample,
                                      double gamma,
                                      const QuadConfig& cfg = {});

/// ln of the exact antiderivative-based integral
/// int_0^1 [a + (1-a) e^{log_c}]^w (1-a)^{n-w} da, used inside the
/// quadrature oracles and testable against 1-D quadrature on its own.
double log_alpha_integral(double log_c, std::int64_t zero_count,
                          std::int64_t n);

/// Fisher information of the zero-truncated NB at kappa: expectation (by
/// direct pmf summation, tail cutoff 1e-12) of the negative second
/// derivative of the log-pmf, central differences with step kappa*1e-4 and
/// one Richardson extrapolation.
double fisher_info_fd(double kappa, double gamma);

/// Cross-check route: E[(d/dkappa log f)^2] with finite-difference scores.
double fisher_info_score_variance(double kappa, double gamma);

/// E[Y^order | Y > 0] for the zero-truncated NB, order 1 or 2, by direct
/// summation with tail cutoff 1e-12.
double truncated_moment_oracle(double kappa, double gamma, int order);

}  // namespace zibayes

#endif
