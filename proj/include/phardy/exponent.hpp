#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace phardy {

// Sobolev exponent p with 1 < p < infinity.
class Exponent {
 public:
  explicit Exponent(double p) : p_(p) {
    if (!(p > 1.0) || !(p < std::numeric_limits<double>::infinity())) {
      throw std::invalid_argument("exponent must satisfy 1 < p < inf, got " +
                                  std::to_string(p));
    }
  }

  double value() const { return p_; }
  // Hoelder conjugate p/(p-1).
  double conjugate() const { return p_ / (p_ - 1.0); }

 private:
  double p_;
};

}  // namespace phardy
