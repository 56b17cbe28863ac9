#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "phardy/exponent.hpp"
#include "phardy/graph.hpp"

namespace phardy {

enum class TreeFamily { explicit_list, polynomial, exponential };

const char* to_string(TreeFamily family);

// How an explicit profile continues past its listed entries.
enum class ExplicitTail {
  constant,  // repeat the last listed value forever
  none,      // the profile is only known on the listed spheres
};

// Spherically symmetric rooted tree with unit edge weights, branching
// numbers k(n) >= 1 and sphere measure m(n) > 0.
//
// Named families use
//   polynomial:  k(n) = ceil(c_k (n+1)^gamma),  m(n) = c_m (n+1)^eta,  gamma > 0 > eta
//   exponential: k(n) = ceil(c_k gamma^n),      m(n) = c_m eta^n,      gamma > 1 >= eta > 0
// so k is nondecreasing and m nonincreasing. k is held as a double: it is
// exact up to 2^53 and +inf once c_k gamma^n leaves the double range, in
// which case log_branching() still returns the exact logarithm.
class SymTree {
 public:
  static SymTree explicit_profile(std::vector<std::uint64_t> k, std::vector<double> m,
                                  ExplicitTail tail = ExplicitTail::constant);
  static SymTree polynomial(double gamma, double c_k, double eta, double c_m);
  static SymTree exponential(double gamma, double c_k, double eta, double c_m);

  TreeFamily family() const { return family_; }
  ExplicitTail explicit_tail() const { return tail_; }
  double gamma() const { return gamma_; }
  double eta() const { return eta_; }
  double c_k() const { return c_k_; }
  double c_m() const { return c_m_; }

  // Number of spheres on which k is known (SIZE_MAX when unbounded).
  std::size_t branching_limit() const;
  // Number of spheres on which m is known (SIZE_MAX when unbounded).
  std::size_t measure_limit() const;

  // Throw std::out_of_range beyond the known profile.
  double branching(std::size_t n) const;
  double log_branching(std::size_t n) const;
  double measure(std::size_t n) const;
  double log_measure(std::size_t n) const;

  // deg(x) for x in S_n: k(0) at the root, k(n)+1 elsewhere.
  double degree(std::size_t n) const;
  double log_degree(std::size_t n) const;

  // k nondecreasing and m nonincreasing over the whole profile.
  bool monotone_profile() const;

  const std::vector<std::uint64_t>& listed_branching() const { return k_list_; }
  const std::vector<double>& listed_measure() const { return m_list_; }

 private:
  SymTree() = default;

  TreeFamily family_ = TreeFamily::explicit_list;
  ExplicitTail tail_ = ExplicitTail::constant;
  double gamma_ = 0.0, eta_ = 0.0, c_k_ = 1.0, c_m_ = 1.0;
  std::vector<std::uint64_t> k_list_;
  std::vector<double> m_list_;
};

// Function on the spheres 0..N of a SymTree; f(x) = values[d(o,x)].
class SymFunction {
 public:
  SymFunction() = default;
  explicit SymFunction(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::size_t horizon() const { return values_.empty() ? 0 : values_.size() - 1; }
  double operator[](std::size_t n) const { return values_[n]; }
  double at(std::size_t n) const { return values_.at(n); }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

// Certified enclosure lower <= sum_{k >= n0} alpha(k) <= upper.
struct TailBound {
  std::size_t n0 = 0;
  double lower = 0.0;
  double upper = 0.0;
};

// |S_n| = prod_{j<n} k(j). Throws std::overflow_error when some k(j) is not
// representable as an integer.
boost::multiprecision::cpp_int sphere_size(const SymTree& t, std::size_t n);
double log_sphere_size(const SymTree& t, std::size_t n);

// Canonical intrinsic edge length between S_n and S_{n+1}:
// (m(n)/deg(n))^(1/p) min (m(n+1)/deg(n+1))^(1/p).
double alpha(const SymTree& t, Exponent p, std::size_t n);
double log_alpha(const SymTree& t, Exponent p, std::size_t n);

enum class BoundaryKind { empty, nonempty, undetermined };

const char* to_string(BoundaryKind kind);

struct BoundaryClassification {
  BoundaryKind kind = BoundaryKind::undetermined;
  std::string reason;
  // Decay of alpha: exponent s with alpha(n) ~ n^(-s) (polynomial) or ratio
  // xi with alpha(n) ~ xi^n (exponential). NaN when not applicable.
  double decay = std::numeric_limits<double>::quiet_NaN();
  // For nonempty boundaries: enclosure of the cutoff D = sum_{k>=1} alpha(k).
  std::optional<TailBound> cutoff;
};

BoundaryClassification boundary_classification(const SymTree& t, Exponent p);

struct BoundaryDistanceOptions {
  double relative_width = 1e-12;    // target enclosure width relative to delta(n_max)
  std::size_t max_terms = 1000000;  // cap on the summation horizon
};

// Enclosures of delta(n) = d_w(x, boundary) = sum_{k>=n} alpha(k) for
// n = 0..n_max. Only named families with a nonempty boundary qualify:
// partial sums run to a horizon H, the tail beyond H is enclosed by
// geometric series (exponential) or integral comparison (polynomial).
//
// This is the uncapped distance; the version with the cutoff
// D = sum_{k>=1} alpha(k) only differs at the root (capped(0) = D = delta(1)).
class BoundaryDistance {
 public:
  // Throws std::domain_error for an empty or undetermined boundary.
  BoundaryDistance(const SymTree& t, Exponent p, std::size_t n_max,
                   BoundaryDistanceOptions options = {});

  std::size_t n_max() const { return suffix_.size() - 2; }
  std::size_t horizon() const { return horizon_; }
  Interval at(std::size_t n) const;
  double mid(std::size_t n) const { return at(n).mid(); }
  Interval capped(std::size_t n) const;
  // Enclosure of sum_{k > horizon} alpha(k).
  const TailBound& tail() const { return tail_; }
  Interval cutoff() const { return at(1); }
  double alpha(std::size_t n) const { return alpha_.at(n); }
  const std::vector<double>& alphas() const { return alpha_; }
  // Midpoints delta(0..n_max).
  std::vector<double> midpoints() const;

 private:
  std::vector<double> alpha_;   // alpha(0..horizon)
  std::vector<double> suffix_;  // sum_{j=n}^{horizon} alpha(j) for n <= n_max + 1
  std::vector<double> error_;   // rounding allowance per suffix sum
  std::size_t horizon_ = 0;
  TailBound tail_;
};

// Family tail enclosure of sum_{j > h} alpha(j) for a named family with a
// nonempty boundary.
TailBound alpha_tail_bound(const SymTree& t, Exponent p, std::size_t h);

Interval delta(const SymTree& t, Exponent p, std::size_t n);

// Two-sided sphere formula for L f(n), root formula at n = 0; needs n < f.size()-1.
double sym_laplacian(const SymTree& t, Exponent p, const SymFunction& f, std::size_t n);

// |grad f|^p(n) = (k(n)|f(n)-f(n+1)|^p + |f(n)-f(n-1)|^p)/m(n), root term omitted at n = 0.
double sym_grad_norm_pow(const SymTree& t, Exponent p, const SymFunction& f, std::size_t n);

// Closed forms for delta, valid when the profile is monotone around n:
// |grad delta|^p(n) = k(n)m(n+1)/(m(n)(k(n+1)+1)) + 1/(k(n)+1), n >= 1.
double sym_grad_delta(const SymTree& t, Exponent p, std::size_t n);
// |grad delta|^p(0) = k(0) alpha(0)^p / m(0).
double sym_grad_delta_root(const SymTree& t, Exponent p);

// L delta(n) = (k(n) alpha(n)^(p-1) - alpha(n-1)^(p-1)) / m(n), n >= 1.
// Evaluated in log space; returns +-inf when the magnitude leaves the double range.
double sym_laplacian_delta(const SymTree& t, Exponent p, std::size_t n);
double sym_laplacian_delta_root(const SymTree& t, Exponent p);

// sum_{n<=N} |S_n| |f(n)|^p m(n)  (the p-th power of the l^p norm).
double a_norm(const SymTree& t, Exponent p, const SymFunction& f, std::size_t horizon);

// (2/p) sum_{n<N} |S_n| k(n) |f(n+1)-f(n)|^p.
double sym_energy(const SymTree& t, Exponent p, const SymFunction& f, std::size_t horizon);

struct MaterializedTree {
  WeightedGraph graph;
  std::vector<std::size_t> sphere_of;      // vertex -> n
  std::vector<std::size_t> sphere_offset;  // first vertex of S_n, plus end sentinel
  std::size_t depth = 0;

  std::size_t sphere_count(std::size_t n) const {
    return sphere_offset.at(n + 1) - sphere_offset.at(n);
  }
};

// Explicit tree down to S_depth (vertices laid out sphere by sphere), unit
// edge weights, m(x) = m(d(o,x)), interior exactly for d(o,x) < depth.
// Throws std::length_error when the vertex count would exceed cap.
MaterializedTree materialize(const SymTree& t, std::size_t depth,
                             std::size_t cap = 1000000);

// Spherically symmetric lift of f to a materialized tree.
GraphFunction lift(const MaterializedTree& tree, const SymFunction& f);

// Least-squares slope of log seq[n] against log n for n in [n1, n2].
// seq is indexed by n. Throws on nonpositive entries or a short range.
double fit_exponent(std::span<const double> seq, std::size_t n1, std::size_t n2);

// Quotient of the tree onto the spheres n_lo..n_hi as a weighted path.
// Vertex i stands for S_{n_lo+i} with measure |S_n| m(n) / |S_{n_lo}| and the
// edge to S_{n+1} has weight |S_{n+1}| / |S_{n_lo}|. Laplacians and gradient
// norms of symmetric functions coincide with the tree values; energies and
// norms are scaled by the common factor 1/|S_{n_lo}|.
struct TreeWindow {
  WeightedGraph graph;
  std::size_t first_sphere = 0;
  double log_scale = 0.0;  // log |S_{n_lo}|

  std::size_t last_sphere() const { return first_sphere + graph.num_vertices() - 1; }
  VertexId vertex(std::size_t n) const;
};

// Throws std::overflow_error when the relative sphere sizes leave the double range.
TreeWindow reduce_window(const SymTree& t, std::size_t n_lo, std::size_t n_hi);

}  // namespace phardy
