// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_COUNTS_HPP
#define ZIBAYES_COUNTS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace zibayes {

// An ordered sample of non-negative counts, n >= 1.  Immutable after
// construction.
class CountSample {
 public:
  explicit CountSample(std::vector<std::int64_t> values);

  const std::vector<std::int64_t>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::int64_t operator[](std::size_t i) const { return values_[i]; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<std::int64_t> values_;
};

// Reduced statistics every marginal depends on: sample size n, number of
// zero observations, total count, and sum_i ln(y_i!).  Note the identity
// zero_count == n  <=>  total == 0.
struct SufficientStats {
  std::int64_t n = 0;
  std::int64_t zero_count = 0;
  std::int64_t total = 0;
  double sum_log_factorial = 0.0;

  bool all_zero() const { return zero_count == n; }
};

SufficientStats compute_suff_stats(const CountSample& sample);

/// sum_i [ ln Gamma(y_i + gamma) - ln Gamma(gamma) ]; the per-value part of
/// the NB-family likelihoods that the sufficient statistics do not capture.
double per_value_gamma_sum(const CountSample& sample, double gamma);

}  // namespace zibayes

#endif
