// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/simulate.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "zibayes/fit.hpp"
#include "zibayes/samplers.hpp"

namespace zibayes {

namespace {

struct Tally {
  int bf3 = 0, bf10 = 0, vuong = 0, inflation = 0, aic = 0;
  int fit_failures = 0;
  std::int64_t zeros = 0;

  void merge(const Tally& o) {
    bf3 += o.bf3;
    bf10 += o.bf10;
    vuong += o.vuong;
    inflation += o.inflation;
    aic += o.aic;
    fit_failures += o.fit_failures;
    zeros += o.zeros;
  }
};

void run_replicate(const ExperimentConfig& cfg, int rep, Tally& tally) {
  RngStream rng(cfg.seed, cfg.stream_offset + static_cast<std::uint64_t>(rep));
  const CountSample data = sample(cfg.generating, cfg.n_per_dataset, rng);
  const SufficientStats st = compute_suff_stats(data);
  tally.zeros += st.zero_count;

  const Family gen = family_of(cfg.generating);
  const bool gen_is_m1 = gen == comparison_m1(cfg.comparison);

  const BfResult bf =
      log_bayes_factor(data, cfg.comparison, cfg.gamma_bayes, cfg.mode);
  const double log_mod = std::log(cfg.threshold_moderate);
  const double log_str = std::log(cfg.threshold_strong);
  if (gen_is_m1 ? bf.log_bf > log_mod : bf.log_bf < -log_mod) ++tally.bf3;
  if (gen_is_m1 ? bf.log_bf > log_str : bf.log_bf < -log_str) ++tally.bf10;

  if (zero_inflation_check(data).inflated) ++tally.inflation;

  try {
    const FitResult f1 = fit(comparison_m1(cfg.comparison), data);
    const FitResult f0 = fit(comparison_m0(cfg.comparison), data);
    try {
      const VuongResult v = vuong_test(f1, f0, data);
      if (gen_is_m1 ? v.preferred == VuongPreference::Model1
                    : v.preferred == VuongPreference::Model0) {
        ++tally.vuong;
      }
    } catch (const std::runtime_error&) {
      // degenerate variance: indeterminate, no agreement counted
    }
    const FitResult fits[2] = {f1, f0};
    if (aic_select(fits) == gen) ++tally.aic;
  } catch (const std::exception&) {
    ++tally.fit_failures;
  }
}

}  // namespace

int worker_thread_count() {
  if (const char* env = std::getenv("ZIBAYES_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ScenarioResult run_scenario(const ExperimentConfig& cfg) {
  if (cfg.reps < 1) throw std::invalid_argument("run_scenario: reps >= 1");
  if (cfg.n_per_dataset < 1) {
    throw std::invalid_argument("run_scenario: n >= 1");
  }
  if (!(cfg.threshold_moderate > 0.0) ||
      !(cfg.threshold_strong >= cfg.threshold_moderate)) {
    throw std::invalid_argument(
        "run_scenario: thresholds must be positive and ordered");
  }
  validate(cfg.generating);

  const auto start = std::chrono::steady_clock::now();
  const int workers = std::min(worker_thread_count(), cfg.reps);
  std::vector<Tally> partial(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (int rep = t; rep < cfg.reps; rep += workers) {
        run_replicate(cfg, rep, partial[static_cast<std::size_t>(t)]);
      }
    });
  }
  for (auto& th : pool) th.join();

  Tally total;
  for (const Tally& p : partial) total.merge(p);

  ScenarioResult r;
  r.bf3 = total.bf3;
  r.bf10 = total.bf10;
  r.vuong = total.vuong;
  r.inflation = total.inflation;
  r.aic = total.aic;
  r.fit_failures = total.fit_failures;
  r.observed_zero_pct =
      100.0 * static_cast<double>(total.zeros) /
      (static_cast<double>(cfg.reps) * static_cast<double>(cfg.n_per_dataset));
  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

namespace {

constexpr double kAlphaGrid[4] = {0.95, 0.75, 0.50, 0.25};

struct RowSpec {
  std::optional<double> lambda, gamma, kappa, alpha;
  ModelParams generating;
  BfComparison comparison;
};

std::vector<RowSpec> table_grid(int table_id) {
  std::vector<RowSpec> rows;
  switch (table_id) {
    case 2: {
      const std::pair<double, double> gk[3] = {{1.5, 0.5}, {0.5, 0.5},
                                               {0.5, 1.5}};
      for (double lambda : {0.5, 1.0, 3.0, 5.0}) {
        for (const auto& [g, k] : gk) {
          rows.push_back({lambda, g, k, std::nullopt, NbParams{g, k},
                          BfComparison::NbVsPoisson});
          rows.push_back({lambda, g, k, std::nullopt, PoissonParams{lambda},
                          BfComparison::NbVsPoisson});
        }
      }
      break;
    }
    case 3: {
      for (double lambda : {0.5, 1.0, 3.0, 5.0}) {
        for (double a : kAlphaGrid) {
          rows.push_back({lambda, std::nullopt, std::nullopt, a,
                          ZipParams{a, lambda}, BfComparison::ZipVsPoisson});
          rows.push_back({lambda, std::nullopt, std::nullopt, std::nullopt,
                          PoissonParams{lambda}, BfComparison::ZipVsPoisson});
        }
      }
      break;
    }
    case 4: {
      const std::pair<double, double> gk[3] = {{1.5, 0.5}, {0.5, 0.5},
                                               {5.0, 5.0}};
      for (const auto& [g, k] : gk) {
        for (double a : kAlphaGrid) {
          rows.push_back({std::nullopt, g, k, a, ZinbParams{a, g, k},
                          BfComparison::ZinbVsNb});
          rows.push_back({std::nullopt, g, k, std::nullopt, NbParams{g, k},
                          BfComparison::ZinbVsNb});
        }
      }
      break;
    }
    case 5: {
      const std::tuple<double, double, double> grid[2] = {{0.5, 0.5, 0.5},
                                                          {5.0, 5.0, 0.5}};
      for (double lambda : {1.0, 3.0}) {
        for (const auto& [g, k, a] : grid) {
          rows.push_back({lambda, g, k, a, ZinbParams{a, g, k},
                          BfComparison::ZinbVsZip});
          rows.push_back({lambda, g, k, a, ZipParams{a, lambda},
                          BfComparison::ZinbVsZip});
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("table id must be 2, 3, 4 or 5");
  }
  return rows;
}

bool table_has_inflation_column(int table_id) {
  return table_id == 3 || table_id == 4;
}

std::string fmt_opt(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream s;
  s << *v;
  return s.str();
}

std::string fmt_pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

TableResult run_table(int table_id, double scale, std::uint64_t seed,
                      double gamma_bayes, EvalMode mode) {
  const int reps = static_cast<int>(std::lround(scale * 1000.0));
  if (reps < 10) {
    throw std::invalid_argument(
        "run_table: scale too small, need scale*1000 >= 10");
  }
  TableResult out;
  out.table_id = table_id;
  const std::vector<RowSpec> grid = table_grid(table_id);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ExperimentConfig cfg;
    cfg.comparison = grid[i].comparison;
    cfg.generating = grid[i].generating;
    cfg.reps = reps;
    cfg.seed = seed;
    cfg.stream_offset = static_cast<std::uint64_t>(i) << 32;
    cfg.gamma_bayes = gamma_bayes;
    cfg.mode = mode;
    TableRow row;
    row.lambda = grid[i].lambda;
    row.gamma = grid[i].gamma;
    row.kappa = grid[i].kappa;
    row.alpha = grid[i].alpha;
    row.generating = family_of(grid[i].generating);
    row.result = run_scenario(cfg);
    out.rows.push_back(row);
  }
  return out;
}

void write_table_csv(const TableResult& table, std::ostream& out) {
  const bool inflation = table_has_inflation_column(table.table_id);
  out << "lambda,gamma,kappa,alpha,zero_pct,generating,bf3,bf10,vuong,";
  if (inflation) out << "inflation,";
  out << "aic\n";
  for (const TableRow& r : table.rows) {
    out << fmt_opt(r.lambda) << ',' << fmt_opt(r.gamma) << ','
        << fmt_opt(r.kappa) << ',' << fmt_opt(r.alpha) << ','
        << fmt_pct(r.result.observed_zero_pct) << ','
        << family_name(r.generating) << ',' << r.result.bf3 << ','
        << r.result.bf10 << ',' << r.result.vuong << ',';
    if (inflation) out << r.result.inflation << ',';
    out << r.result.aic << '\n';
  }
}

void write_scenario_csv(const ExperimentConfig& cfg,
                        const ScenarioResult& result, std::ostream& out) {
  out << "comparison,generating,reps,n,seed,zero_pct,bf3,bf10,vuong,"
         "inflation,aic,fit_failures\n";
  out << comparison_name(cfg.comparison) << ','
      << family_name(family_of(cfg.generating)) << ',' << cfg.reps << ','
      << cfg.n_per_dataset << ',' << cfg.seed << ','
      << fmt_pct(result.observed_zero_pct) << ',' << result.bf3 << ','
      << result.bf10 << ',' << result.vuong << ',' << result.inflation << ','
      << result.aic << ',' << result.fit_failures << '\n';
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto need = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw std::invalid_argument("config: missing key '" + key + "'");
    return *v;
  };
  auto to_double = [](const std::string& v) { return std::stod(v); };

  ExperimentConfig cfg;
  cfg.comparison = comparison_from_name(need("comparison"));
  const Family model = family_from_name(need("model"));
  switch (model) {
    case Family::Poisson:
      cfg.generating = PoissonParams{to_double(need("lambda"))};
      break;
    case Family::Nb:
      cfg.generating =
          NbParams{to_double(need("gamma")), to_double(need("kappa"))};
      break;
    case Family::Zip:
      cfg.generating =
          ZipParams{to_double(need("alpha")), to_double(need("lambda"))};
      break;
    case Family::Zinb:
      cfg.generating = ZinbParams{to_double(need("alpha")),
                                  to_double(need("gamma")),
                                  to_double(need("kappa"))};
      break;
  }
  if (auto v = take("reps")) cfg.reps = std::stoi(*v);
  if (auto v = take("n")) cfg.n_per_dataset = std::stoll(*v);
  if (auto v = take("seed")) cfg.seed = std::stoull(*v);
  if (auto v = take("gamma_bayes")) cfg.gamma_bayes = to_double(*v);
  if (auto v = take("mode")) cfg.mode = eval_mode_from_name(*v);
  if (auto v = take("thresholds")) {
    const auto comma = v->find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("config: thresholds expects 'a,b'");
    }
    cfg.threshold_moderate = to_double(v->substr(0, comma));
    cfg.threshold_strong = to_double(v->substr(comma + 1));
  }
  // generation parameters not consumed by the model are tolerated only if
  // they belong to the documented key set
  for (const auto& [key, value] : kv) {
    if (key != "lambda" && key != "gamma" && key != "kappa" &&
        key != "alpha") {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace zibayes
