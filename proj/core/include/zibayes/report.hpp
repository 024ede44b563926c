// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_REPORT_HPP
#define ZIBAYES_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zibayes/bayes_factor.hpp"
#include "zibayes/counts.hpp"
#include "zibayes/fit.hpp"
#include "zibayes/marginals.hpp"

namespace zibayes {

struct DataSummary {
  std::int64_t n = 0;
  std::int64_t zero_count = 0;
  std::int64_t total = 0;
  double zero_pct = 0.0;

  bool operator==(const DataSummary&) const = default;
};

struct FitSummary {
  Family family = Family::Poisson;
  bool converged = false;
  bool at_boundary = false;
  int iterations = 0;
  int k = 0;
  // estimates keyed by family: theta / gamma,kappa / alpha,theta / alpha,gamma,kappa
  std::vector<std::pair<std::string, double>> estimates;
  std::optional<double> loglik;   // absent when the fit errored out
  std::optional<double> aic;
  std::string message;            // non-convergence / error note

  bool operator==(const FitSummary&) const = default;
};

struct BfSummary {
  BfComparison comparison = BfComparison::NbVsPoisson;
  double log_bf = 0.0;  // +-inf allowed
  Evidence interpretation = Evidence::WeakM1;
  bool degenerate_all_zero = false;
  std::optional<double> composed_log_bf;

  bool operator==(const BfSummary&) const = default;
};

struct VuongSummary {
  BfComparison comparison = BfComparison::NbVsPoisson;
  bool available = false;
  double z = 0.0;
  std::int64_t n_effective = 0;
  std::string preferred;  // "m1", "m0", "indeterminate"
  std::string message;    // why unavailable

  bool operator==(const VuongSummary&) const = default;
};

struct InflationSummary {
  double ratio = 0.0;
  bool inflated = false;

  bool operator==(const InflationSummary&) const = default;
};

// Everything cmd_fit reports for one count column.
struct AnalysisReport {
  std::string schema_version = "1";
  DataSummary data;
  double gamma_bayes = 1.001;
  EvalMode mode = EvalMode::OracleValidated;
  std::vector<FitSummary> fits;        // all four families
  std::vector<BfSummary> bayes_factors;  // all four comparisons
  std::vector<VuongSummary> vuong;
  InflationSummary inflation;

  bool operator==(const AnalysisReport&) const = default;
};

/// Runs the full four-model workflow on the sample.  Non-convergent or
/// non-identifiable fits are reported with a message; the Bayes factors
/// are always computed (the Bayesian path needs no MLE).
AnalysisReport build_report(const CountSample& sample, double gamma_bayes,
                            EvalMode mode);

std::string report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const std::string& json_text);

/// Human-readable rendering of the report.
void print_report(const AnalysisReport& report, std::ostream& out);

}  // namespace zibayes

#endif
