// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "zibayes/fit.hpp"
#include "zibayes/samplers.hpp"

using namespace zibayes;

TEST_CASE("Poisson closed form") {
  const FitResult r = fit(Family::Poisson, CountSample({1, 1}));
  CHECK(r.converged);
  CHECK(std::get<PoissonParams>(r.params).theta == doctest::Approx(1.0));
  CHECK(r.loglik == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(r.aic == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(r.k == 1);
}

TEST_CASE("Poisson on all zeros sits on the boundary") {
  const FitResult r = fit(Family::Poisson, CountSample({0, 0, 0}));
  CHECK(r.converged);
  CHECK(r.at_boundary);
  CHECK(r.loglik == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("NB fit recovers overdispersed parameters") {
  RngStream rng(321, 0);
  const CountSample s = sample(NbParams{0.8, 2.5}, 20000, rng);
  const FitResult r = fit(Family::Nb, s);
  CHECK(r.converged);
  const NbParams p = std::get<NbParams>(r.params);
  CHECK(p.kappa == doctest::Approx(2.5).epsilon(0.05));
  CHECK(p.gamma == doctest::Approx(0.8).epsilon(0.15));
  CHECK(r.k == 2);
}

TEST_CASE("NB fit on equidispersed data caps the dispersion") {
  RngStream rng(322, 0);
  const CountSample s = sample(PoissonParams{4.0}, 5000, rng);
  const FitResult nb = fit(Family::Nb, s);
  const FitResult pois = fit(Family::Poisson, s);
  CHECK(nb.converged);
  // Poisson limit: likelihood approaches the Poisson value from below,
  // within the O(n E[y^2]/gamma_cap) gap left by the cap
  CHECK(nb.loglik >= pois.loglik - 0.2);
  CHECK(nb.loglik <= pois.loglik + 1e-5);
  CHECK(nb.at_boundary);
}

TEST_CASE("NB-family fits reject all-zero samples") {
  CHECK_THROWS_AS(fit(Family::Nb, CountSample({0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit(Family::Zinb, CountSample({0, 0})),
                  std::invalid_argument);
}

TEST_CASE("ZIP fit: no zeros collapses to Poisson") {
  const CountSample s({3, 1, 2, 4, 2, 1, 5});
  const FitResult zip = fit(Family::Zip, s);
  const FitResult pois = fit(Family::Poisson, s);
  CHECK(zip.converged);
  CHECK(std::get<ZipParams>(zip.params).alpha == doctest::Approx(0.0));
  CHECK(zip.loglik == doctest::Approx(pois.loglik).epsilon(1e-6));
}

TEST_CASE("ZIP fit recovers inflation") {
  RngStream rng(555, 0);
  const CountSample s = sample(ZipParams{0.5, 3.0}, 20000, rng);
  const FitResult r = fit(Family::Zip, s);
  CHECK(r.converged);
  const ZipParams p = std::get<ZipParams>(r.params);
  CHECK(p.alpha == doctest::Approx(0.5).epsilon(0.05));
  CHECK(p.theta == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("ZINB EM ascends and recovers parameters") {
  RngStream rng(556, 0);
  const CountSample s = sample(ZinbParams{0.4, 1.5, 2.0}, 20000, rng);
  const FitResult r = fit(Family::Zinb, s);
  CHECK(r.converged);
  for (std::size_t i = 1; i < r.loglik_trace.size(); ++i) {
    CHECK(r.loglik_trace[i] >= r.loglik_trace[i - 1] - 1e-10);
  }
  const ZinbParams p = std::get<ZinbParams>(r.params);
  CHECK(p.alpha == doctest::Approx(0.4).epsilon(0.15));
  CHECK(p.kappa == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("EM ascent on random ZINB samples") {
  for (int trial = 0; trial < 20; ++trial) {
    RngStream rng(9000, static_cast<std::uint64_t>(trial));
    const double alpha = 0.2 + 0.5 * (trial % 5) / 5.0;
    const CountSample s = sample(ZinbParams{alpha, 1.0, 2.0}, 300, rng);
    if (compute_suff_stats(s).all_zero()) continue;
    const FitResult r = fit(Family::Zinb, s);
    for (std::size_t i = 1; i < r.loglik_trace.size(); ++i) {
      CHECK(r.loglik_trace[i] >= r.loglik_trace[i - 1] - 1e-10);
    }
  }
}

TEST_CASE("likelihood dominance of the nested pairs") {
  for (int trial = 0; trial < 10; ++trial) {
    RngStream rng(771, static_cast<std::uint64_t>(trial));
    const CountSample s = sample(ZinbParams{0.3, 1.0, 2.0}, 400, rng);
    const FitResult pois = fit(Family::Poisson, s);
    const FitResult zip = fit(Family::Zip, s);
    const FitResult nb = fit(Family::Nb, s);
    const FitResult zinb = fit(Family::Zinb, s);
    CHECK(zip.loglik >= pois.loglik - 1e-6);
    CHECK(zinb.loglik >= nb.loglik - 1e-6);
  }
}

TEST_CASE("AIC selection") {
  FitResult a, b;
  a.family = Family::Poisson;
  a.k = 1;
  a.aic = 6.0;
  a.converged = true;
  b.family = Family::Zip;
  b.k = 2;
  b.aic = 8.0;
  b.converged = true;
  const std::vector<FitResult> fits{a, b};
  CHECK(aic_select(fits) == Family::Poisson);

  b.aic = 6.0;  // tie goes to the smaller k
  const std::vector<FitResult> tie{b, a};
  CHECK(aic_select(tie) == Family::Poisson);

  a.converged = false;
  b.converged = false;
  const std::vector<FitResult> none{a, b};
  CHECK_THROWS_AS(aic_select(none), std::runtime_error);
}

TEST_CASE("AIC prefers Poisson over ZIP on Poisson data") {
  int poisson_selected = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    RngStream rng(515151, rep);
    const CountSample s = sample(PoissonParams{5.0}, 100, rng);
    const FitResult fits[2] = {fit(Family::Zip, s), fit(Family::Poisson, s)};
    if (aic_select(fits) == Family::Poisson) ++poisson_selected;
  }
  CHECK(poisson_selected >= 85);
}

TEST_CASE("AIC formula invariant") {
  RngStream rng(4141, 0);
  const CountSample s = sample(ZipParams{0.5, 2.0}, 500, rng);
  for (Family f : {Family::Poisson, Family::Nb, Family::Zip, Family::Zinb}) {
    const FitResult r = fit(f, s);
    CHECK(r.aic ==
          doctest::Approx(2.0 * r.k - 2.0 * r.loglik).epsilon(1e-12));
  }
}

TEST_CASE("Vuong test behavior") {
  RngStream rng(6161, 0);
  const CountSample s = sample(NbParams{0.5, 1.5}, 500, rng);
  const FitResult nb = fit(Family::Nb, s);
  const FitResult pois = fit(Family::Poisson, s);
  const VuongResult v = vuong_test(nb, pois, s);
  CHECK(v.n_effective == 500);
  CHECK(v.z > 1.96);  // overdispersed data favors NB
  CHECK(v.preferred == VuongPreference::Model1);

  // antisymmetry
  const VuongResult w = vuong_test(pois, nb, s);
  CHECK(w.z == doctest::Approx(-v.z).epsilon(1e-12));

  // identical fits = degenerate variance
  CHECK_THROWS_AS(vuong_test(nb, nb, s), std::runtime_error);

  FitResult broken = pois;
  broken.converged = false;
  CHECK_THROWS_AS(vuong_test(nb, broken, s), std::invalid_argument);
}

TEST_CASE("zero inflation check") {
  CHECK_FALSE(zero_inflation_check(CountSample({1, 2, 3})).inflated);
  CHECK(zero_inflation_check(CountSample({1, 2, 3})).ratio == 0.0);

  RngStream rng(7272, 0);
  const CountSample zip = sample(ZipParams{0.5, 3.0}, 1000, rng);
  CHECK(zero_inflation_check(zip).inflated);

  // At theta=3, n=1000 the ratio has sd ~0.13, so the default 5% margin
  // flags roughly a third of plain Poisson samples; the check is a coarse
  // screen, not a calibrated test.
  int flagged = 0;
  for (int s = 0; s < 100; ++s) {
    RngStream r(7373, static_cast<std::uint64_t>(s));
    if (zero_inflation_check(sample(PoissonParams{3.0}, 1000, r)).inflated) {
      ++flagged;
    }
  }
  CHECK(flagged >= 10);
  CHECK(flagged <= 60);
  // a wider margin behaves like a proper one-sided screen
  int flagged_wide = 0;
  for (int s = 0; s < 100; ++s) {
    RngStream r(7373, static_cast<std::uint64_t>(s));
    if (zero_inflation_check(sample(PoissonParams{3.0}, 1000, r), 0.4)
            .inflated) {
      ++flagged_wide;
    }
  }
  CHECK(flagged_wide <= 5);
}
