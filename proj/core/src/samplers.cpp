// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/samplers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "zibayes/special_math.hpp"

namespace zibayes {

namespace {

std::int64_t draw_nb(double gamma, double kappa, RngStream& rng) {
  const double rate = rng.gamma(gamma) * (kappa / gamma);
  return rate > 0.0 ? rng.poisson(rate) : 0;
}

}  // namespace

CountSample sample(const ModelParams& params, std::int64_t n, RngStream& rng) {
  if (n < 1) throw std::domain_error("sample: n >= 1 required");
  validate(params);
  std::vector<std::int64_t> draws;
  draws.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    draws.push_back(std::visit(
        [&rng](const auto& p) -> std::int64_t {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, PoissonParams>) {
            return rng.poisson(p.theta);
          } else if constexpr (std::is_same_v<T, NbParams>) {
            return draw_nb(p.gamma, p.kappa, rng);
          } else if constexpr (std::is_same_v<T, ZipParams>) {
            if (rng.uniform() < p.alpha) return 0;
            return rng.poisson(p.theta);
          } else {
            if (rng.uniform() < p.alpha) return 0;
            return draw_nb(p.gamma, p.kappa, rng);
          }
        },
        params));
  }
  return CountSample(std::move(draws));
}

double zero_fraction_expected(const ModelParams& params) {
  validate(params);
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return std::exp(-p.theta);
        } else if constexpr (std::is_same_v<T, NbParams>) {
          return nb_zero_prob(p.kappa, p.gamma);
        } else if constexpr (std::is_same_v<T, ZipParams>) {
          return p.alpha + (1.0 - p.alpha) * std::exp(-p.theta);
        } else {
          return p.alpha + (1.0 - p.alpha) * nb_zero_prob(p.kappa, p.gamma);
        }
      },
      params);
}

}  // namespace zibayes
