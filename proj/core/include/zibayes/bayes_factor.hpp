// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_BAYES_FACTOR_HPP
#define ZIBAYES_BAYES_FACTOR_HPP

#include <optional>
#include <string>

#include "zibayes/counts.hpp"
#include "zibayes/marginals.hpp"
#include "zibayes/models.hpp"

namespace zibayes {

// The four tested hypotheses, each M1 against M0.
enum class BfComparison { NbVsPoisson, ZipVsPoisson, ZinbVsNb, ZinbVsZip };

Family comparison_m1(BfComparison c);
Family comparison_m0(BfComparison c);
std::string comparison_name(BfComparison c);
BfComparison comparison_from_name(const std::string& name);

// Evidence bands for beta_10, lower bound of each band inclusive:
//   beta < 1/10          strong M0
//   1/10 <= beta < 1/3.2 moderate M0
//   1/3.2 <= beta < 1    weak M0
//   1 <= beta < 3.2      weak M1
//   3.2 <= beta < 10     moderate M1
//   beta >= 10           strong M1
enum class Evidence {
  StrongM0,
  ModerateM0,
  WeakM0,
  WeakM1,
  ModerateM1,
  StrongM1
};

std::string evidence_name(Evidence e);
std::string evidence_description(Evidence e, BfComparison c);
Evidence evidence_from_name(const std::string& name);

/// Maps log beta_10 to its evidence band.  +-inf map to the strong bands;
/// NaN throws std::invalid_argument.
Evidence interpret(double log_bf);

struct BfResult {
  double log_bf = 0.0;  // +-inf sentinels allowed
  BfComparison comparison = BfComparison::NbVsPoisson;
  Evidence interpretation = Evidence::WeakM1;
  bool degenerate_all_zero = false;
  EvalMode mode = EvalMode::OracleValidated;
  // In paper-literal mode, the composed printed beta display is evaluated
  // alongside the marginal difference and recorded here.
  std::optional<double> composed_log_bf;
};

/// Canonical log Bayes factor: log m(y|M1) - log m(y|M0) in the given mode.
/// All-zero samples short-circuit to the printed phi=0 limits (see
/// all_zero_limit); ZipVsPoisson is +inf there.
BfResult log_bayes_factor(const CountSample& sample, BfComparison comparison,
                          double gamma,
                          EvalMode mode = EvalMode::OracleValidated);

/// The printed phi=0 limit expressions, on the log scale.
/// ZipVsPoisson returns +inf.  The ZINB-numerator displays are printed as
/// sums to j = n whose j = n term is Gamma(0); they are only finite --- as
/// the surrounding text asserts --- with that term dropped, which is how
/// they are evaluated here.
double all_zero_limit(BfComparison comparison, std::int64_t n, double gamma);

/// The composed beta displays exactly as printed (single formulas rather
/// than marginal ratios), on the log scale.  For beta^4 the printed display
/// collapses a ratio of j-sums into one sum and is not an identity; it is
/// exposed here so the deviation can be measured, never hidden.
double composed_log_bf(const CountSample& sample, BfComparison comparison,
                       double gamma);

}  // namespace zibayes

#endif
