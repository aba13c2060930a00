#pragma once

#include <cstdint>
#include <string_view>

namespace alflab {

// SplitMix64 stream. Output depends only on (seed, stream), never on the
// platform's <random> distributions, so sampled points are reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();
  double uniform();                   // [0, 1)
  double uniform(double lo, double hi);
  double normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_name(std::string_view name);

// Independent substream for item `index` of a named suite.
Rng substream(std::uint64_t seed, std::string_view suite, std::uint64_t index);

}  // namespace alflab
