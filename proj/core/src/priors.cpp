// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/priors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "zibayes/errors.hpp"
#include "zibayes/special_math.hpp"

namespace zibayes {

namespace {

void require_pos(double v, const char* what) {
  if (!(v > 0.0)) {
    throw std::domain_error(std::string(what) + " must be > 0");
  }
}

}  // namespace

double poisson_prior_logdensity(double theta) {
  require_pos(theta, "theta");
  return -0.5 * std::log(theta);
}

double nb_prior_logdensity(double kappa, double gamma) {
  require_pos(kappa, "kappa");
  require_pos(gamma, "gamma");
  return 0.5 * (std::log(gamma) - std::log(kappa) - std::log(gamma + kappa));
}

double zip_c1(double theta) {
  require_pos(theta, "theta");
  // Both numerator and denominator vanish like theta as theta -> 0; switch
  // to the series below 1e-4 where the direct form loses digits.
  if (theta < 1e-4) {
    // 1-(1+t)e^{-t} = t^2/2 - t^3/3 + t^4/8 - ...,  1-e^{-t} = t - t^2/2 + ...
    const double t = theta;
    const double num = 0.5 * t * t * (1.0 - (2.0 / 3.0) * t + 0.25 * t * t);
    const double den = -std::expm1(-t);
    return std::sqrt(num) / den;
  }
  const double num = 1.0 - (1.0 + theta) * std::exp(-theta);
  const double den = -std::expm1(-theta);
  return std::sqrt(num) / den;
}

C2Result zinb_c2_checked(double kappa, double gamma) {
  require_pos(kappa, "kappa");
  require_pos(gamma, "gamma");
  const double p0 = nb_zero_prob(kappa, gamma);
  const double d = 1.0 - p0;  // P(Y > 0)
  const double kg = kappa + gamma;
  const double t1 =
      gamma * gamma / (kappa * kappa * d) * (2.0 - 1.0 / (kg * d));
  const double t2 = -kappa / kg;
  // (1 + kappa/gamma)^{-(2+gamma)} via logs
  const double pow_term = std::exp(-(2.0 + gamma) * std::log1p(kappa / gamma));
  const double t3 =
      kappa * kg / gamma * (pow_term / d) * (1.0 + 1.0 / gamma + 1.0 / d);
  C2Result r;
  r.radicand = t1 + t2 + t3;
  r.real = r.radicand >= 0.0;
  r.value = r.real ? std::sqrt(r.radicand) :
                     std::numeric_limits<double>::quiet_NaN();
  return r;
}

double zinb_c2(double kappa, double gamma) {
  const C2Result r = zinb_c2_checked(kappa, gamma);
  if (!r.real) {
    std::ostringstream msg;
    msg << "zinb_c2: radicand " << r.radicand << " < 0 at kappa=" << kappa
        << ", gamma=" << gamma << " (closed form not a real density there)";
    throw OracleError(msg.str());
  }
  return r.value;
}

double truncated_nb_fisher_info(double kappa, double gamma) {
  require_pos(kappa, "kappa");
  require_pos(gamma, "gamma");
  // Evaluated in its own displayed grouping, not via c2, so the algebraic
  // relation c2^2 * gamma/(kappa(kappa+gamma)) == I(kappa) stays testable.
  const double p0 = nb_zero_prob(kappa, gamma);
  const double d = 1.0 - p0;
  const double kg = kappa + gamma;
  const double gk = gamma / kappa;
  const double t1 = gk * gk * gk / (kg * d) * (2.0 - 1.0 / (kg * d));
  const double t2 = -gamma / (kg * kg);
  const double pow_term = std::exp(-(2.0 + gamma) * std::log1p(kappa / gamma));
  const double t3 = (pow_term / d) * ((1.0 + gamma) / gamma + 1.0 / d);
  return t1 + t2 + t3;
}

double truncated_nb_mean(double kappa, double gamma) {
  require_pos(kappa, "kappa");
  require_pos(gamma, "gamma");
  const double log_d = std::log1p(-nb_zero_prob(kappa, gamma));
  const double lg = log_gamma(gamma);
  const double log_ratio = std::log1p(gamma / kappa);
  double sum = 0.0;
  const long long y_max = 1000000;
  for (long long y = 1; y <= y_max; ++y) {
    const double yd = static_cast<double>(y);
    const double lp = log_gamma(yd + gamma) - lg - log_factorial(y) +
                      log_nb_zero_prob(kappa, gamma) - yd * log_ratio - log_d;
    const double term = yd * std::exp(lp);
    sum += term;
    if (term < 1e-12 * (sum + 1e-300) && yd > 10.0 * (1.0 + kappa)) {
      return sum;
    }
  }
  throw OracleError("truncated_nb_mean: tail not converged within 1e6 terms");
}

double truncated_nb_mean_display(double kappa, double gamma) {
  require_pos(kappa, "kappa");
  require_pos(gamma, "gamma");
  return gamma * gamma / (kappa * (1.0 - nb_zero_prob(kappa, gamma)));
}

double zinb_prior_logdensity(double kappa, const PriorSpec& spec) {
  const double base = nb_prior_logdensity(kappa, spec.gamma_fixed);
  if (spec.variant == PriorVariant::Simple) return base;
  return std::log(zinb_c2(kappa, spec.gamma_fixed)) + base;
}

}  // namespace zibayes
