// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_RNG_HPP
#define ZIBAYES_RNG_HPP

#include <cstdint>

namespace zibayes {

// Counter-derived random stream: (seed, stream_id) fully determines the
// output sequence, so parallel replicates reproduce without shared state.
// xoshiro256++ core seeded through splitmix64; the generator is pinned here
// rather than taken from <random> so sequences are identical across
// standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 bits.
  double uniform();

  /// Standard normal via Box-Muller (two uniforms per draw, no caching).
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 boosted through
  /// G(a) = G(a+1) * U^(1/a).
  double gamma(double shape);

  /// Poisson(mean) by inversion for small means, halving split otherwise.
  std::int64_t poisson(double mean);

 private:
  std::uint64_t s_[4];
};

}  // namespace zibayes

#endif
