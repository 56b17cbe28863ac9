#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phardy/exponent.hpp"
#include "phardy/graph.hpp"

namespace phardy {

// Symmetric nonnegative edge lengths w, one value per entry of g.edges().
class EdgeWeighting {
 public:
  EdgeWeighting() = default;
  EdgeWeighting(const WeightedGraph& g, std::vector<double> per_edge);

  // w = 1 on every edge, inducing the combinatorial distance.
  static EdgeWeighting unit(const WeightedGraph& g);

  std::size_t size() const { return w_.size(); }
  double on_edge(std::size_t edge) const { return w_.at(edge); }
  // w(x,y) for adjacent x, y; throws std::out_of_range otherwise.
  double operator()(const WeightedGraph& g, VertexId x, VertexId y) const;
  const std::vector<double>& values() const { return w_; }
  bool strictly_positive() const;

 private:
  std::vector<double> w_;
};

struct DistanceField {
  VertexId source = 0;
  std::vector<double> dist;  // +inf where unreachable
};

// Single-source d_w by label-setting shortest paths.
// Throws std::invalid_argument on a negative or missing edge length.
DistanceField path_distance(const WeightedGraph& g, const EdgeWeighting& w, VertexId source);

// w(x,y) = (m(x)/deg(x))^(1/p) min (m(y)/deg(y))^(1/p).
EdgeWeighting canonical_intrinsic_weight(const WeightedGraph& g, Exponent p);

// sigma(x,y) evaluated on edges. Three backends: the raw weighting w (an
// upper bound for d_w on edges), the path metric d_w itself, or a callback.
class DistanceOracle {
 public:
  using Callback = std::function<double(VertexId, VertexId)>;

  static DistanceOracle edge_weighting(const WeightedGraph& g, const EdgeWeighting& w);
  static DistanceOracle path_metric(const WeightedGraph& g, const EdgeWeighting& w);
  static DistanceOracle callback(std::string name, Callback fn);

  // Throws std::domain_error when sigma is undefined (NaN or negative).
  double operator()(const WeightedGraph& g, VertexId x, VertexId y) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::vector<double> per_edge_;  // used by the tabulated backends
  Callback fn_;
};

struct IntrinsicReport {
  double p = 0.0;
  // 1 - (1/m(x)) sum_y b(x,y) sigma(x,y)^p at every vertex; only interior
  // entries enter the verdict.
  std::vector<double> slack;
  bool verdict = false;
  double min_interior_slack = 0.0;
};

IntrinsicReport check_intrinsic(const WeightedGraph& g, Exponent p, const DistanceOracle& sigma);

// max over edges of |f(x)-f(y)|/sigma(x,y), with 0/0 = 0 and t/0 = +inf.
double lipschitz_constant(const WeightedGraph& g, const DistanceOracle& sigma,
                          const GraphFunction& f);

// {x : d_w(center, x) <= r}, sorted.
std::vector<VertexId> ball(const WeightedGraph& g, const EdgeWeighting& w, VertexId center,
                           double r);

}  // namespace phardy
