// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "zibayes/rng.hpp"
#include "zibayes/special_math.hpp"

using namespace zibayes;

TEST_CASE("log_gamma known values") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
  // ln sqrt(pi)
  CHECK(log_gamma(0.5) ==
        doctest::Approx(0.5723649429247001).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.0), std::domain_error);
}

TEST_CASE("log_gamma agrees with the C library over the contract range") {
  // independent route: std::lgamma
  for (double x : {1e-3, 1e-2, 0.3, 0.5, 0.999, 1.5, 3.0, 7.7, 42.0, 900.5,
                   1e4, 1e6, 1e8}) {
    const double mine = log_gamma(x);
    const double ref = std::lgamma(x);
    CHECK(std::abs(mine - ref) <=
          1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("log_gamma recurrence on a randomized grid") {
  RngStream rng(2024, 0);
  for (int i = 0; i < 200; ++i) {
    const double x = std::exp(rng.uniform() * 16.0 - 4.0);  // [e^-4, e^12]
    const double lhs = log_gamma(x + 1.0) - log_gamma(x);
    const double rhs = std::log(x);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("log_beta values and symmetry") {
  CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  // B(1/2, 1/2) = pi
  CHECK(log_beta(0.5, 0.5) ==
        doctest::Approx(1.1447298858494002).epsilon(1e-13));
  RngStream rng(7, 1);
  for (int i = 0; i < 50; ++i) {
    const double a = 0.01 + rng.uniform() * 20.0;
    const double b = 0.01 + rng.uniform() * 20.0;
    CHECK(log_beta(a, b) == log_beta(b, a));
  }
  CHECK_THROWS_AS(log_beta(0.0, 1.0), std::domain_error);
}

TEST_CASE("log_sum_exp basics") {
  const std::vector<double> two_zeros{0.0, 0.0};
  CHECK(log_sum_exp(two_zeros) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const std::vector<double> with_zero_mass{kLogZero, 1.25};
  CHECK(log_sum_exp(with_zero_mass) == doctest::Approx(1.25));

  const std::vector<double> huge{1000.0, 1000.0};
  CHECK(log_sum_exp(huge) ==
        doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-14));

  const std::vector<double> all_zero_mass{kLogZero, kLogZero};
  CHECK(is_log_zero(log_sum_exp(all_zero_mass)));

  CHECK_THROWS_AS(log_sum_exp(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(log_sum_exp(std::vector<double>{std::nan("")}),
                  std::invalid_argument);
}

TEST_CASE("log_sum_exp shift invariance") {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> t;
    const int len = 1 + static_cast<int>(rng.uniform() * 12);
    for (int i = 0; i < len; ++i) t.push_back(rng.uniform() * 200.0 - 100.0);
    const double c = rng.uniform() * 2000.0 - 1000.0;
    const double base = log_sum_exp(t);
    for (double& v : t) v += c;
    CHECK(std::abs(log_sum_exp(t) - (base + c)) <= 1e-12 * std::max(1.0, std::abs(base + c)));
  }
}

TEST_CASE("log_factorial matches log_gamma") {
  for (long long y : {0LL, 1LL, 2LL, 5LL, 20LL, 21LL, 100LL, 100000LL}) {
    CHECK(log_factorial(y) ==
          doctest::Approx(log_gamma(static_cast<double>(y) + 1.0))
              .epsilon(1e-13));
  }
  CHECK_THROWS_AS(log_factorial(-1), std::domain_error);
}

TEST_CASE("digamma against the log_gamma derivative") {
  for (double x : {0.1, 0.5, 1.0, 2.5, 10.0, 123.0}) {
    const double h = 1e-6 * std::max(1.0, x);
    const double fd = (log_gamma(x + h) - log_gamma(x - h)) / (2.0 * h);
    CHECK(digamma(x) == doctest::Approx(fd).epsilon(1e-6));
  }
  // psi(1) = -EulerGamma
  CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-12));
}

TEST_CASE("nb_zero_prob stays in log domain") {
  CHECK(nb_zero_prob(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  // large kappa/gamma must not overflow
  CHECK(std::isfinite(log_nb_zero_prob(1e8, 1.001)));
  CHECK(nb_zero_prob(1e8, 1.001) >= 0.0);
}
