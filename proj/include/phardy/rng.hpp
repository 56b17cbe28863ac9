#pragma once

#include <cstddef>
#include <cstdint>

namespace phardy {

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based stream: draw i of stream (seed, id) is splitmix64 of a key
// derived from both, so substreams never depend on draw order elsewhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform on {0, ..., n-1}; n > 0.
  std::size_t index(std::size_t n);
  bool bernoulli(double prob) { return uniform() < prob; }

  Rng split(std::uint64_t stream) const { return Rng(key_, stream); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace phardy
