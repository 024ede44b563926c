// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_SPECIAL_MATH_HPP
#define ZIBAYES_SPECIAL_MATH_HPP

#include <limits>
#include <span>

namespace zibayes {

// All likelihood work in this library happens on the natural-log scale.
// A log-domain value is a plain double that is either finite or -inf
// (exact zero mass); operations below never let a NaN escape.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

inline bool is_log_zero(double x) { return x == kLogZero; }

/// ln Gamma(x) for x > 0.  Lanczos approximation (g = 7, 9 terms), which
/// keeps the relative error below ~1e-14 over [1e-3, 1e8].
/// Throws std::domain_error for x <= 0 or NaN.
double log_gamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), a, b > 0.
double log_beta(double a, double b);

/// ln sum_i exp(t_i) via the usual two-pass max shift.  Accepts -inf
/// entries; returns -inf when every entry is -inf.  Throws
/// std::invalid_argument on an empty span or on NaN entries.
double log_sum_exp(std::span<const double> terms);

/// ln y! as ln Gamma(y+1); exact table for y <= 20.
double log_factorial(long long y);

/// Digamma psi(x) for x > 0; recurrence into the asymptotic regime.
double digamma(double x);

/// (1 + kappa/gamma)^(-gamma) evaluated as exp(-gamma*log1p(kappa/gamma)).
/// This is the zero probability of the NB model; every power of it in the
/// library routes through here.
double nb_zero_prob(double kappa, double gamma);

/// log of nb_zero_prob, i.e. -gamma*log1p(kappa/gamma).
double log_nb_zero_prob(double kappa, double gamma);

}  // namespace zibayes

#endif
