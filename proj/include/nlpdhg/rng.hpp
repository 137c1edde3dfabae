#pragma once

#include <cstdint>
#include <random>

namespace nlpdhg {

// Named streams; each tensor of a generated fixture draws from its own stream
// so that changing one size does not shift the others.
enum class Stream : std::uint64_t {
  Features = 1,
  Noise = 2,
  Payoff = 3,
  InitX = 4,
  InitY = 5,
  Support = 6,
  Signs = 7,
  Test = 99,
};

// mt19937_64 (bit-exact across standard libraries) seeded through splitmix64
// from (seed, stream). Uniforms use the top 53 bits; normals use Box-Muller,
// since std::normal_distribution is implementation-defined.
class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream);
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return eng_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace nlpdhg
