// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_SAMPLERS_HPP
#define ZIBAYES_SAMPLERS_HPP

#include "zibayes/counts.hpp"
#include "zibayes/models.hpp"
#include "zibayes/rng.hpp"

namespace zibayes {

/// n independent draws from the given model.  NB is drawn as a
/// gamma-Poisson mixture with gamma shape gamma and mean kappa (mixture
/// mean kappa, variance kappa + kappa^2/gamma); ZIP/ZINB draw a
/// Bernoulli(alpha) inflation indicator, then the base variate.
CountSample sample(const ModelParams& params, std::int64_t n, RngStream& rng);

/// P(Y = 0) under the model: e^-theta; (1+kappa/gamma)^-gamma;
/// alpha + (1-alpha) e^-theta; alpha + (1-alpha)(1+kappa/gamma)^-gamma.
double zero_fraction_expected(const ModelParams& params);

}  // namespace zibayes

#endif
