// Apache License, Version 2.0, refer to LICENSE.txt

#include <benchmark/benchmark.h>

#include "zibayes/bayes_factor.hpp"
#include "zibayes/fit.hpp"
#include "zibayes/marginals.hpp"
#include "zibayes/oracles.hpp"
#include "zibayes/samplers.hpp"
#include "zibayes/simulate.hpp"

namespace {

using namespace zibayes;

CountSample make_column(std::int64_t n) {
  RngStream rng(2718, 0);
  return sample(ZinbParams{0.6, 1.5, 2.0}, n, rng);
}

void BM_SuffStats(benchmark::State& state) {
  const CountSample s = make_column(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_suff_stats(s));
  }
}
BENCHMARK(BM_SuffStats)->Arg(100)->Arg(900);

void BM_MarginalZinb(benchmark::State& state) {
  const CountSample s = make_column(state.range(0));
  const SufficientStats st = compute_suff_stats(s);
  const double gsum = per_value_gamma_sum(s, 1.001);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_marginal_zinb(st, gsum, 1.001));
  }
}
BENCHMARK(BM_MarginalZinb)->Arg(100)->Arg(900);

void BM_AllFourBayesFactors(benchmark::State& state) {
  const CountSample s = make_column(state.range(0));
  for (auto _ : state) {
    for (BfComparison c :
         {BfComparison::NbVsPoisson, BfComparison::ZipVsPoisson,
          BfComparison::ZinbVsNb, BfComparison::ZinbVsZip}) {
      benchmark::DoNotOptimize(log_bayes_factor(s, c, 1.001));
    }
  }
}
BENCHMARK(BM_AllFourBayesFactors)->Arg(100)->Arg(900);

void BM_FitZinb(benchmark::State& state) {
  const CountSample s = make_column(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(Family::Zinb, s));
  }
}
BENCHMARK(BM_FitZinb)->Arg(100)->Arg(900);

void BM_SampleZinb(benchmark::State& state) {
  RngStream rng(5, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(ZinbParams{0.6, 1.5, 2.0}, 900, rng));
  }
}
BENCHMARK(BM_SampleZinb);

void BM_QuadMarginalZinb(benchmark::State& state) {
  const CountSample s({0, 2, 1, 0, 4, 0, 3});
  QuadConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad_log_marginal(Family::Zinb, s, 1.001, cfg));
  }
}
BENCHMARK(BM_QuadMarginalZinb);

void BM_Scenario(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.comparison = BfComparison::ZipVsPoisson;
  cfg.generating = ZipParams{0.5, 3.0};
  cfg.reps = 20;
  cfg.n_per_dataset = 100;
  cfg.seed = 12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scenario(cfg));
  }
}
BENCHMARK(BM_Scenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
