#pragma once

#include <cstddef>
#include <vector>

#include "phardy/hardy.hpp"
#include "phardy/symtree.hpp"

namespace phardy {

struct TreeCertificateScan {
  // Sphere indices: K = {0..n0-1}, scan [n0, horizon].
  SuperharmonicCertificate cert;
  std::size_t n0 = 0;
  std::size_t n0_doubled = 0;  // the same scan run to 2*horizon
  bool stable = false;         // n0 == n0_doubled
  // Lower bound for log(k(n) alpha(n)^(p-1) / alpha(n-1)^(p-1)) at n = horizon+1;
  // it is nondecreasing in n, so a positive value settles every n > horizon.
  double tail_log_bound = 0.0;
};

// Certificate for h = delta: L delta(n) >= lambda delta(n)^(p-1) for n in
// [n0, horizon]. For lambda <= 0 the claim extends past the horizon when the
// family bound is positive. Returns nullopt when the inequality fails at the
// horizon itself. Throws std::domain_error unless the boundary is nonempty.
std::optional<TreeCertificateScan> superharmonic_certificate(const SymTree& t, Exponent p,
                                                             std::size_t horizon = 500,
                                                             double lambda = 0.0);

struct TreeEdgeRatio {
  std::vector<double> ratios;  // delta(n)/delta(n+1) midpoints, n = 0..n_max
  double scanned_max = 1.0;   // upper enclosure of the scanned maximum
  std::size_t argmax = 0;
  double tail_bound = 0.0;     // sup over n > n_max of alpha(n)/delta(n+1)
  double certified_sup = 1.0;  // max(scanned_max, 1 + tail_bound)
};

// sup over edges of delta(x)/delta(y) = 1 + alpha(n)/delta(n+1).
TreeEdgeRatio edge_ratio(const SymTree& t, Exponent p, std::size_t n_max);

struct TreeHardyInstance {
  TreeWindow window;
  GraphFunction h;  // delta midpoints on the window
  SuperharmonicCertificate cert;  // mapped to window vertices
  double edge_ratio = 1.0;        // certified sup over the whole tree
};

// Window [n_lo, n_hi] with h = delta and the tree certificate translated to it.
TreeHardyInstance tree_hardy_instance(const SymTree& t, Exponent p,
                                      const SuperharmonicCertificate& cert, std::size_t n_lo,
                                      std::size_t n_hi);

// Both Hardy inequalities for symmetric test functions given on the window
// vertices. Sides are scaled by 1/|S_{n_lo}|.
HardyReport verify_hardy(const TreeHardyInstance& instance, Exponent p,
                         const std::vector<GraphFunction>& phis, double rel_tol = 1e-10);

// Behaviour of f past its last listed sphere.
struct FunctionTail {
  enum class Kind { zero, delta_power, unknown };
  Kind kind = Kind::zero;
  double coefficient = 1.0;  // f(n) = coefficient * delta(n)^exponent
  double exponent = 0.0;
};

// Sums over spheres 0..f.horizon() with h = delta, weights |S_n| m(n), and a
// divergence ratio test for delta-power tails.
HarrisNorm harris_weight_norm(const SymTree& t, Exponent p, const SymFunction& f,
                              const FunctionTail& tail);

}  // namespace phardy
