// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_MODELS_HPP
#define ZIBAYES_MODELS_HPP

#include <cstdint>
#include <string>
#include <variant>

#include "zibayes/counts.hpp"

namespace zibayes {

enum class Family { Poisson, Nb, Zip, Zinb };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Free-parameter count used by AIC: Poisson 1, NB 2, ZIP 2, ZINB 3.
int free_param_count(Family f);

struct PoissonParams {
  double theta;  // mean, > 0
};

struct NbParams {
  double gamma;  // dispersion, > 0
  double kappa;  // mean, > 0
};

struct ZipParams {
  double alpha;  // zero-inflation weight, in [0, 1)
  double theta;  // base Poisson mean, > 0
};

struct ZinbParams {
  double alpha;  // zero-inflation weight, in [0, 1)
  double gamma;  // dispersion, > 0
  double kappa;  // base NB mean, > 0
};

using ModelParams = std::variant<PoissonParams, NbParams, ZipParams, ZinbParams>;

Family family_of(const ModelParams& params);

/// Throws std::domain_error unless all rate/mean/dispersion parameters are
/// strictly positive and inflation weights lie in [0, 1).
void validate(const ModelParams& params);

/// Distribution mean; for ZINB this is (1-alpha)*kappa.
double model_mean(const ModelParams& params);

/// Distribution variance; for ZINB this is (1-alpha)*kappa*(1-alpha*kappa+kappa/gamma).
double model_variance(const ModelParams& params);

/// ln f(y | params) for the matching family.
double log_pmf(const ModelParams& params, std::int64_t y);

/// sum_i ln f(y_i | params).
double log_likelihood(const ModelParams& params, const CountSample& sample);

}  // namespace zibayes

#endif
