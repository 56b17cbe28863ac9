#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "phardy/exponent.hpp"
#include "phardy/graph.hpp"

namespace phardy {

// Two sides of an inequality lhs >= rhs.
struct Margin {
  double lhs = 0.0;
  double rhs = 0.0;

  double value() const { return lhs - rhs; }
  double scale() const;  // max(|lhs|, |rhs|, 1)
  bool holds(double rel_tol = 1e-10) const { return value() >= -rel_tol * scale(); }
};

struct CompIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

// 2h(x) L h(x) against |grad h|^p(x) + (1/m(x)) sum_y b (h(x)+h(y))(h(x)-h(y))|h(x)-h(y)|^(p-2).
// Throws std::invalid_argument for nonpositive h or non-interior x.
CompIdentity comp_identity(const WeightedGraph& g, Exponent p, const GraphFunction& h, VertexId x);

// lhs = 2 h^(1/2) L(h^(1/2))(x), rhs = |grad h^(1/2)|^p(x) + L h(x) / (2^(p-2) h(x)^((p-2)/2)).
Margin main_estimate_gap(const WeightedGraph& g, Exponent p, const GraphFunction& h, VertexId x);

// Concave nondecreasing C^1 map with its derivative.
struct ConcaveMap {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static ConcaveMap identity();
  static ConcaveMap sqrt();
  // t^a, 0 < a <= 1.
  static ConcaveMap power(double a);
  static ConcaveMap log1p();
};

// Placement of phi' in the lower bound for |grad (phi o h)|^p(x).
enum class ChainReading {
  // inf_{y~x} phi'(h(x) v h(y))^p |grad h|^p(x)
  infimum,
  // (1/m(x)) sum_y b phi'(h(x) v h(y))^p |h(x)-h(y)|^p
  per_neighbor,
  // inf_{y~x} phi'(h(x) ^ h(y))^p |grad h|^p(x); not a valid bound, kept for comparison
  literal_min,
};

const char* to_string(ChainReading reading);

// lhs = |grad (phi o h)|^p(x), rhs as selected by reading.
// Throws std::domain_error when phi' is not finite and nonnegative on the range of h.
Margin chain_lower_bound_gap(const WeightedGraph& g, Exponent p, const GraphFunction& h,
                             const ConcaveMap& phi, VertexId x,
                             ChainReading reading = ChainReading::infimum);

// lhs = Q(phi), rhs = (2/p) sum_x (L h(x)/h(x)^(p-1)) |phi(x)|^p m(x).
// Throws std::invalid_argument when phi touches a non-interior vertex or h <= 0
// on the support and its neighbours.
Margin picone_check(const WeightedGraph& g, Exponent p, const GraphFunction& h,
                    const GraphFunction& phi);

// L h >= lambda h^(p-1) on the covered indices. Indices are vertices for graphs
// and sphere numbers for trees.
struct SuperharmonicCertificate {
  double lambda = 0.0;
  std::vector<std::size_t> exceptional;  // K, sorted
  // min over checked indices outside K of L h - lambda h^(p-1)
  double margin = 0.0;
  std::size_t scan_lo = 0;
  std::size_t scan_hi = 0;
  // The inequality also holds for every index beyond scan_hi.
  bool tail_certified = false;
  std::string target;
  std::string note;

  bool covers(std::size_t index) const;
  bool valid() const { return margin >= -1e-12; }
};

struct CertificateOptions {
  std::vector<VertexId> exceptional;
  // Proposed lambda; when unset, lambda = min of L h / h^(p-1) outside K.
  std::optional<double> lambda;
};

// Scans interior vertices outside K, which are all treated as exceptional
// when they are not interior. Returns nullopt when a given lambda fails.
// Throws std::invalid_argument on nonpositive h and when nothing is scanned.
std::optional<SuperharmonicCertificate> superharmonic_certificate(
    const WeightedGraph& g, Exponent p, const GraphFunction& h,
    const CertificateOptions& options = {});

// max over edges, both orientations, of h(x)/h(y).
double edge_ratio(const WeightedGraph& g, const GraphFunction& h);

struct HardyWeights {
  double w_half = 0.0;  // |grad h^(1/2)|^p(x) / h(x)^(p/2)
  double w_full = 0.0;  // |grad h|^p(x) / h(x)^p
};

HardyWeights hardy_weights(const WeightedGraph& g, Exponent p, const GraphFunction& h, VertexId x);

struct HardyOptions {
  // Replaces the truncation's edge ratio, e.g. with a certified sup over an
  // infinite graph.
  std::optional<double> edge_ratio;
  double rel_tol = 1e-10;
};

struct HardyReport {
  double p = 0.0;
  double lambda = 0.0;
  double c1 = 0.0;  // 1/p
  double c2 = 0.0;  // lambda/(p 2^(p-2))
  double c3 = 0.0;  // 1/(p 2^p K^(p/2))
  double edge_ratio = 1.0;
  std::vector<Margin> first;   // Q(phi) >= c1 sum w_half |phi|^p m + c2 ||phi||_p^p
  std::vector<Margin> second;  // Q(phi) >= c3 sum w_full |phi|^p m + c2 ||phi||_p^p
  double min_first = std::numeric_limits<double>::infinity();   // min of value/scale
  double min_second = std::numeric_limits<double>::infinity();
  bool verdict = true;
  std::string note;
};

// Throws std::invalid_argument when a support leaves the interior or is not
// covered by the certificate.
HardyReport verify_hardy(const WeightedGraph& g, Exponent p, const GraphFunction& h,
                         const SuperharmonicCertificate& cert,
                         const std::vector<GraphFunction>& phis, const HardyOptions& options = {});

enum class TailVerdict { certified_finite, certified_infinite, undetermined };

const char* to_string(TailVerdict verdict);

struct HarrisNorm {
  double partial = 0.0;      // sum |f|^p (|grad h|/h)^p m over the scan
  double partial_over_h = 0.0;  // sum |f/h|^p m over the scan
  double log_partial = -std::numeric_limits<double>::infinity();
  double log_partial_over_h = -std::numeric_limits<double>::infinity();
  TailVerdict tail = TailVerdict::undetermined;
  TailVerdict tail_over_h = TailVerdict::undetermined;
  std::string reason;
};

// Sums over interior vertices. Both tails are certified finite when f is
// supported on the interior and undetermined otherwise.
HarrisNorm harris_weight_norm(const WeightedGraph& g, Exponent p, const GraphFunction& h,
                              const GraphFunction& f);

}  // namespace phardy
