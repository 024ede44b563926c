// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>
#include <vector>

#include "zibayes/samplers.hpp"

using namespace zibayes;

namespace {

double zero_fraction(const CountSample& s) {
  return static_cast<double>(compute_suff_stats(s).zero_count) /
         static_cast<double>(s.size());
}

// two-sample chi-square on pooled bins (expected count >= 5), critical
// value from the Wilson-Hilferty approximation
bool two_sample_chisq_rejects(const CountSample& a, const CountSample& b,
                              double z_quantile) {
  std::map<std::int64_t, std::pair<double, double>> bins;
  for (std::int64_t y : a) bins[std::min<std::int64_t>(y, 25)].first += 1.0;
  for (std::int64_t y : b) bins[std::min<std::int64_t>(y, 25)].second += 1.0;
  // pool sparse upper bins
  std::vector<std::pair<double, double>> pooled;
  double acc_a = 0.0, acc_b = 0.0;
  for (const auto& [y, counts] : bins) {
    acc_a += counts.first;
    acc_b += counts.second;
    if (acc_a + acc_b >= 10.0) {
      pooled.emplace_back(acc_a, acc_b);
      acc_a = acc_b = 0.0;
    }
  }
  if (acc_a + acc_b > 0.0) {
    if (pooled.empty()) return false;
    pooled.back().first += acc_a;
    pooled.back().second += acc_b;
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double stat = 0.0;
  for (const auto& [ca, cb] : pooled) {
    const double tot = ca + cb;
    const double ea = tot * na / (na + nb);
    const double eb = tot * nb / (na + nb);
    stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
  }
  const double df = static_cast<double>(pooled.size() - 1);
  const double wh = 2.0 / (9.0 * df);
  const double crit = df * std::pow(1.0 - wh + z_quantile * std::sqrt(wh), 3);
  return stat > crit;
}

}  // namespace

TEST_CASE("identical streams give identical samples") {
  RngStream a(1234, 77);
  RngStream b(1234, 77);
  const CountSample sa = sample(ZinbParams{0.5, 1.5, 2.0}, 2000, a);
  const CountSample sb = sample(ZinbParams{0.5, 1.5, 2.0}, 2000, b);
  CHECK(sa.values() == sb.values());

  RngStream c(1234, 78);  // different stream id
  const CountSample sc = sample(ZinbParams{0.5, 1.5, 2.0}, 2000, c);
  CHECK(sa.values() != sc.values());
}

TEST_CASE("zero_fraction_expected displays") {
  CHECK(zero_fraction_expected(ZipParams{0.95, 3.0}) ==
        doctest::Approx(0.95 + 0.05 * std::exp(-3.0)).epsilon(1e-15));
  CHECK(zero_fraction_expected(ZipParams{0.95, 3.0}) ==
        doctest::Approx(0.9525).epsilon(1e-3));
  CHECK(zero_fraction_expected(ZipParams{0.25, 3.0}) ==
        doctest::Approx(0.2873).epsilon(1e-3));
  CHECK(zero_fraction_expected(PoissonParams{3.0}) ==
        doctest::Approx(0.0498).epsilon(1e-2));
  CHECK(zero_fraction_expected(NbParams{1.0, 1.0}) == doctest::Approx(0.5));
  CHECK(zero_fraction_expected(ZinbParams{0.0, 1.0, 1.0}) ==
        doctest::Approx(0.5));
}

TEST_CASE("empirical zero fraction within 4 Monte Carlo SEs") {
  const std::int64_t n = 100000;
  const std::vector<ModelParams> grid = {
      PoissonParams{0.5},         PoissonParams{3.0},
      NbParams{0.5, 1.5},         NbParams{2.0, 3.0},
      ZipParams{0.5, 3.0},        ZipParams{0.95, 1.0},
      ZinbParams{0.25, 0.5, 0.5}, ZinbParams{0.75, 5.0, 5.0}};
  int stream = 0;
  for (const ModelParams& p : grid) {
    RngStream rng(20240601, static_cast<std::uint64_t>(stream++));
    const double expected = zero_fraction_expected(p);
    const double observed = zero_fraction(sample(p, n, rng));
    const double se =
        std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
    CHECK(std::abs(observed - expected) <= 4.0 * se);
  }
}

TEST_CASE("NB moments from the gamma-Poisson mixture") {
  const std::int64_t n = 100000;
  RngStream rng(8888, 0);
  const CountSample s = sample(NbParams{2.0, 3.0}, n, rng);
  double mean = 0.0;
  for (std::int64_t y : s) mean += static_cast<double>(y);
  mean /= static_cast<double>(n);
  // variance kappa + kappa^2/gamma = 7.5
  CHECK(std::abs(mean - 3.0) <= 3.0 * std::sqrt(7.5 / static_cast<double>(n)));
}

TEST_CASE("Poisson zero fraction near exp(-1/2)") {
  RngStream rng(2468, 1);
  const CountSample s = sample(PoissonParams{0.5}, 100000, rng);
  const double p = std::exp(-0.5);
  CHECK(std::abs(zero_fraction(s) - p) <=
        4.0 * std::sqrt(p * (1.0 - p) / 1e5));
}

TEST_CASE("ZINB with alpha=0 is distributionally NB") {
  RngStream r1(777, 0), r2(777, 1);
  const CountSample a = sample(NbParams{1.5, 2.0}, 100000, r1);
  const CountSample b = sample(ZinbParams{0.0, 1.5, 2.0}, 100000, r2);
  CHECK_FALSE(two_sample_chisq_rejects(a, b, 3.0902));  // 1e-3 level
}

TEST_CASE("ZIP boundary behavior") {
  RngStream rng(13, 0);
  const CountSample near_one = sample(ZipParams{0.999, 2.0}, 20000, rng);
  CHECK(zero_fraction(near_one) > 0.99);
  // alpha = 0 reproduces Poisson draws distributionally
  RngStream r1(14, 0), r2(14, 1);
  const CountSample a = sample(PoissonParams{2.0}, 100000, r1);
  const CountSample b = sample(ZipParams{0.0, 2.0}, 100000, r2);
  CHECK_FALSE(two_sample_chisq_rejects(a, b, 3.0902));
}

TEST_CASE("sampler guards") {
  RngStream rng(1, 1);
  CHECK_THROWS_AS(sample(PoissonParams{1.0}, 0, rng), std::domain_error);
  CHECK_THROWS_AS(sample(PoissonParams{-1.0}, 5, rng), std::domain_error);
  CHECK_THROWS_AS(sample(ZipParams{1.0, 1.0}, 5, rng), std::domain_error);
}
