// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/counts.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "zibayes/special_math.hpp"

namespace zibayes {

CountSample::CountSample(std::vector<std::int64_t> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("CountSample: sample must be non-empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0) {
      throw std::invalid_argument("CountSample: negative count at index " +
                                  std::to_string(i));
    }
  }
}

SufficientStats compute_suff_stats(const CountSample& sample) {
  SufficientStats s;
  s.n = static_cast<std::int64_t>(sample.size());
  for (std::int64_t y : sample) {
    if (y == 0) ++s.zero_count;
    s.total += y;
    s.sum_log_factorial += log_factorial(y);
  }
  return s;
}

double per_value_gamma_sum(const CountSample& sample, double gamma) {
  if (!(gamma > 0.0)) {
    throw std::domain_error("per_value_gamma_sum: require gamma > 0");
  }
  const double lg = log_gamma(gamma);
  double acc = 0.0;
  for (std::int64_t y : sample) {
    if (y > 0) acc += log_gamma(static_cast<double>(y) + gamma) - lg;
  }
  return acc;
}

}  // namespace zibayes
