// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/models.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "zibayes/special_math.hpp"

namespace zibayes {

namespace {

double require_positive(double v, const char* what) {
  if (!(v > 0.0) || std::isinf(v)) {
    throw std::domain_error(std::string(what) + " must be strictly positive");
  }
  return v;
}

double require_inflation(double a, const char* what) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1)");
  }
  return a;
}

double poisson_log_pmf(double theta, std::int64_t y) {
  return -theta + static_cast<double>(y) * std::log(theta) - log_factorial(y);
}

double nb_log_pmf(double gamma, double kappa, std::int64_t y) {
  double r = log_nb_zero_prob(kappa, gamma);
  if (y > 0) {
    r += log_gamma(static_cast<double>(y) + gamma) - log_gamma(gamma) -
         log_factorial(y) - static_cast<double>(y) * std::log1p(gamma / kappa);
  }
  return r;
}

// ln(alpha + (1-alpha)*base_zero) with base_zero given on the log scale.
double inflated_zero_mass(double alpha, double log_base_zero) {
  const std::array<double, 2> terms = {
      alpha > 0.0 ? std::log(alpha) : kLogZero,
      std::log1p(-alpha) + log_base_zero};
  return log_sum_exp(terms);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Poisson: return "poisson";
    case Family::Nb: return "nb";
    case Family::Zip: return "zip";
    case Family::Zinb: return "zinb";
  }
  throw std::logic_error("family_name: bad enum");
}

Family family_from_name(const std::string& name) {
  if (name == "poisson") return Family::Poisson;
  if (name == "nb") return Family::Nb;
  if (name == "zip") return Family::Zip;
  if (name == "zinb") return Family::Zinb;
  throw std::invalid_argument("unknown model family: " + name);
}

int free_param_count(Family f) {
  switch (f) {
    case Family::Poisson: return 1;
    case Family::Nb: return 2;
    case Family::Zip: return 2;
    case Family::Zinb: return 3;
  }
  throw std::logic_error("free_param_count: bad enum");
}

Family family_of(const ModelParams& params) {
  return std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PoissonParams>) return Family::Poisson;
        else if constexpr (std::is_same_v<T, NbParams>) return Family::Nb;
        else if constexpr (std::is_same_v<T, ZipParams>) return Family::Zip;
        else return Family::Zinb;
      },
      params);
}

void validate(const ModelParams& params) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          require_positive(p.theta, "theta");
        } else if constexpr (std::is_same_v<T, NbParams>) {
          require_positive(p.gamma, "gamma");
          require_positive(p.kappa, "kappa");
        } else if constexpr (std::is_same_v<T, ZipParams>) {
          require_inflation(p.alpha, "alpha");
          require_positive(p.theta, "theta");
        } else {
          require_inflation(p.alpha, "alpha");
          require_positive(p.gamma, "gamma");
          require_positive(p.kappa, "kappa");
        }
      },
      params);
}

double model_mean(const ModelParams& params) {
  validate(params);
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PoissonParams>) return p.theta;
        else if constexpr (std::is_same_v<T, NbParams>) return p.kappa;
        else if constexpr (std::is_same_v<T, ZipParams>)
          return (1.0 - p.alpha) * p.theta;
        else
          return (1.0 - p.alpha) * p.kappa;
      },
      params);
}

double model_variance(const ModelParams& params) {
  validate(params);
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return p.theta;
        } else if constexpr (std::is_same_v<T, NbParams>) {
          return p.kappa + p.kappa * p.kappa / p.gamma;
        } else if constexpr (std::is_same_v<T, ZipParams>) {
          return (1.0 - p.alpha) * p.theta * (1.0 + p.alpha * p.theta);
        } else {
          // law of total variance for the zero/NB mixture
          return (1.0 - p.alpha) * p.kappa *
                 (1.0 + p.alpha * p.kappa + p.kappa / p.gamma);
        }
      },
      params);
}

double log_pmf(const ModelParams& params, std::int64_t y) {
  if (y < 0) throw std::domain_error("log_pmf: negative count");
  validate(params);
  return std::visit(
      [y](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return poisson_log_pmf(p.theta, y);
        } else if constexpr (std::is_same_v<T, NbParams>) {
          return nb_log_pmf(p.gamma, p.kappa, y);
        } else if constexpr (std::is_same_v<T, ZipParams>) {
          if (y == 0) return inflated_zero_mass(p.alpha, -p.theta);
          return std::log1p(-p.alpha) + poisson_log_pmf(p.theta, y);
        } else {
          if (y == 0)
            return inflated_zero_mass(p.alpha,
                                      log_nb_zero_prob(p.kappa, p.gamma));
          return std::log1p(-p.alpha) + nb_log_pmf(p.gamma, p.kappa, y);
        }
      },
      params);
}

double log_likelihood(const ModelParams& params, const CountSample& sample) {
  double acc = 0.0;
  for (std::int64_t y : sample) acc += log_pmf(params, y);
  return acc;
}

}  // namespace zibayes
