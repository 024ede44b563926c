// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_TEST_UTIL_HPP
#define ZIBAYES_TEST_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "zibayes/counts.hpp"
#include "zibayes/rng.hpp"

namespace zibayes::test {

// |a - b| relative to |b|, with an absolute floor of 1 so log-scale values
// near zero are compared absolutely.
inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

// Random small sample: n in [n_min, n_max], counts in [0, max_count],
// at least one nonzero entry, roughly half the entries zero.
inline CountSample random_small_sample(RngStream& rng, int n_min = 1,
                                       int n_max = 10, int max_count = 6) {
  while (true) {
    const int n =
        n_min + static_cast<int>(rng.uniform() * (n_max - n_min + 1));
    std::vector<std::int64_t> v;
    bool has_nonzero = false;
    for (int i = 0; i < n; ++i) {
      std::int64_t y = 0;
      if (rng.uniform() > 0.45) {
        y = 1 + static_cast<std::int64_t>(rng.uniform() * max_count);
        if (y > max_count) y = max_count;
      }
      if (y > 0) has_nonzero = true;
      v.push_back(y);
    }
    if (has_nonzero) return CountSample(std::move(v));
  }
}

}  // namespace zibayes::test

#endif
