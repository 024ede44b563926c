// Apache License, Version 2.0, refer to LICENSE.txt

#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "zibayes/simulate.hpp"

using namespace zibayes;

TEST_CASE("scenario determinism") {
  ExperimentConfig cfg;
  cfg.comparison = BfComparison::NbVsPoisson;
  cfg.generating = NbParams{0.5, 1.5};
  cfg.reps = 8;
  cfg.n_per_dataset = 40;
  cfg.seed = 42;
  const ScenarioResult a = run_scenario(cfg);
  const ScenarioResult b = run_scenario(cfg);
  CHECK(a.bf3 == b.bf3);
  CHECK(a.bf10 == b.bf10);
  CHECK(a.vuong == b.vuong);
  CHECK(a.inflation == b.inflation);
  CHECK(a.aic == b.aic);
  CHECK(a.observed_zero_pct == b.observed_zero_pct);
}

TEST_CASE("counts bounded by reps and threshold nesting") {
  ExperimentConfig cfg;
  cfg.comparison = BfComparison::ZipVsPoisson;
  cfg.generating = ZipParams{0.5, 1.0};
  cfg.reps = 25;
  cfg.n_per_dataset = 50;
  cfg.seed = 7;
  const ScenarioResult r = run_scenario(cfg);
  for (int c : {r.bf3, r.bf10, r.vuong, r.inflation, r.aic}) {
    CHECK(c >= 0);
    CHECK(c <= cfg.reps);
  }
  CHECK(r.bf10 <= r.bf3);
}

TEST_CASE("table grids have the printed shape") {
  const TableResult t2 = run_table(2, 0.01, 11);
  CHECK(t2.rows.size() == 24);
  const TableResult t5 = run_table(5, 0.01, 11);
  CHECK(t5.rows.size() == 8);
  CHECK_THROWS_AS(run_table(2, 0.001, 11), std::invalid_argument);
  CHECK_THROWS_AS(run_table(7, 0.1, 11), std::invalid_argument);
}

TEST_CASE("table 3 layout and deterministic CSV bytes") {
  const TableResult a = run_table(3, 0.01, 42);
  const TableResult b = run_table(3, 0.01, 42);
  CHECK(a.rows.size() == 32);
  std::ostringstream csv_a, csv_b;
  write_table_csv(a, csv_a);
  write_table_csv(b, csv_b);
  CHECK(csv_a.str() == csv_b.str());
  CHECK(csv_a.str().find("inflation") != std::string::npos);
  // row ordering: first row is the ZIP-generated lambda=0.5, alpha=0.95 cell
  CHECK(csv_a.str().find("0.5,,,0.95,") != std::string::npos);

  std::ostringstream csv2;
  write_table_csv(run_table(2, 0.01, 42), csv2);
  CHECK(csv2.str().find("inflation") == std::string::npos);
}

TEST_CASE("config parsing round trip") {
  std::istringstream in(
      "# scenario\n"
      "comparison = zinb-vs-nb\n"
      "model = zinb\n"
      "alpha = 0.5\n"
      "gamma = 1.5\n"
      "kappa = 0.5\n"
      "reps = 55\n"
      "n = 64\n"
      "seed = 99\n"
      "gamma_bayes = 1.001\n"
      "mode = paper-literal\n"
      "thresholds = 3.2,10\n");
  const ExperimentConfig cfg = parse_experiment_config(in);
  CHECK(cfg.comparison == BfComparison::ZinbVsNb);
  CHECK(family_of(cfg.generating) == Family::Zinb);
  CHECK(cfg.reps == 55);
  CHECK(cfg.n_per_dataset == 64);
  CHECK(cfg.seed == 99);
  CHECK(cfg.mode == EvalMode::PaperLiteral);
  CHECK(cfg.threshold_moderate == doctest::Approx(3.2));
  CHECK(cfg.threshold_strong == doctest::Approx(10.0));

  std::istringstream missing("comparison = nb-vs-poisson\nmodel = nb\n");
  CHECK_THROWS_AS(parse_experiment_config(missing), std::invalid_argument);
  std::istringstream unknown(
      "comparison = nb-vs-poisson\nmodel = nb\ngamma = 1\nkappa = 1\n"
      "bogus = 3\n");
  CHECK_THROWS_AS(parse_experiment_config(unknown), std::invalid_argument);
}

TEST_CASE("single replicate is a pure function of the config") {
  ExperimentConfig cfg;
  cfg.comparison = BfComparison::NbVsPoisson;
  cfg.generating = PoissonParams{5.0};
  cfg.reps = 1;
  cfg.n_per_dataset = 30;
  cfg.seed = 4242;
  const ScenarioResult a = run_scenario(cfg);
  const ScenarioResult b = run_scenario(cfg);
  CHECK(a.bf3 == b.bf3);
  CHECK(a.aic == b.aic);
  CHECK(a.observed_zero_pct == b.observed_zero_pct);
}
