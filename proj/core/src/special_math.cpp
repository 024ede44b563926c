// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zibayes {

namespace {

// Lanczos g = 7, n = 9 coefficients (Godfrey).
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  // valid for x >= 0.5
  const double z = x - 1.0;
  double acc = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) acc += kLanczosCoef[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(acc);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: require x > 0, got " +
                            std::to_string(x));
  }
  if (x < 0.5) {
    // Gamma(x) = Gamma(x+1)/x
    return lanczos_log_gamma(x + 1.0) - std::log(x);
  }
  return lanczos_log_gamma(x);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("log_beta: require a, b > 0");
  }
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("log_sum_exp: empty input");
  }
  double m = kLogZero;
  for (double t : terms) {
    if (std::isnan(t)) throw std::invalid_argument("log_sum_exp: NaN term");
    m = std::max(m, t);
  }
  if (is_log_zero(m)) return kLogZero;
  double s = 0.0;
  for (double t : terms) {
    if (!is_log_zero(t)) s += std::exp(t - m);
  }
  return m + std::log(s);
}

namespace {

struct FactorialTable {
  double v[21];
  FactorialTable() {
    v[0] = 0.0;
    double f = 1.0;
    for (int i = 1; i <= 20; ++i) {
      f *= i;
      v[i] = std::log(f);
    }
  }
};

}  // namespace

double log_factorial(long long y) {
  if (y < 0) throw std::domain_error("log_factorial: negative argument");
  static const FactorialTable table;
  if (y <= 20) return table.v[y];
  return log_gamma(static_cast<double>(y) + 1.0);
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("digamma: require x > 0");
  }
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // asymptotic expansion ln x - 1/(2x) - sum B_2k/(2k x^{2k})
  return acc + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 -
                 inv2 * (1.0 / 120.0 -
                         inv2 * (1.0 / 252.0 -
                                 inv2 * (1.0 / 240.0 -
                                         inv2 * (1.0 / 132.0)))));
}

double log_nb_zero_prob(double kappa, double gamma) {
  if (!(kappa > 0.0) || !(gamma > 0.0)) {
    throw std::domain_error("log_nb_zero_prob: require kappa, gamma > 0");
  }
  return -gamma * std::log1p(kappa / gamma);
}

double nb_zero_prob(double kappa, double gamma) {
  return std::exp(log_nb_zero_prob(kappa, gamma));
}

}  // namespace zibayes
