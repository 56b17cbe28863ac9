#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace phardy {

using VertexId = std::size_t;

struct Edge {
  VertexId x;
  VertexId y;
  double weight;
};

// Neighbour entry in a vertex's adjacency row.
struct Neighbor {
  VertexId id;
  double weight;
  std::size_t edge;  // index into WeightedGraph::edges()
};

// Finite truncation of a weighted graph (b, m) over a countable vertex set.
//
// Edge weights are stored once per unordered pair and mirrored into both
// adjacency rows, so b(x,y) = b(y,x) holds by construction. Rows are sorted
// by neighbour id. The interior mask marks vertices whose complete
// neighbourhood of the underlying (possibly infinite) graph is present;
// neighbourhood sums at other vertices are truncation artifacts.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Throws std::invalid_argument on self-loops, nonpositive weights or
  // measures, out-of-range endpoints, repeated pairs, or a mask of the wrong
  // length. An empty mask means "every vertex is interior".
  WeightedGraph(std::size_t n, std::vector<double> measure,
                std::span<const Edge> edges, std::vector<bool> interior = {});

  std::size_t num_vertices() const { return measure_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  double measure(VertexId x) const { return measure_.at(x); }
  const std::vector<double>& measures() const { return measure_; }

  bool is_interior(VertexId x) const { return interior_.at(x); }
  const std::vector<bool>& interior_mask() const { return interior_; }
  std::size_t num_interior() const;

  std::span<const Neighbor> neighbors(VertexId x) const;
  std::size_t valence(VertexId x) const { return neighbors(x).size(); }

  // Weight b(x,y); zero when x and y are not adjacent.
  double weight(VertexId x, VertexId y) const;

  // Index of the unordered pair {x,y} in edges(), or npos when not adjacent.
  std::size_t edge_index(VertexId x, VertexId y) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Unordered edge list with x < y, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  void check_vertex(VertexId x) const;

 private:
  std::vector<double> measure_;
  std::vector<bool> interior_;
  std::vector<std::size_t> row_offset_;
  std::vector<Neighbor> adjacency_;
  std::vector<Edge> edges_;
};

// Real-valued function on the vertex table of a WeightedGraph.
class GraphFunction {
 public:
  GraphFunction() = default;
  explicit GraphFunction(std::size_t n, double fill = 0.0);
  explicit GraphFunction(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](VertexId x) const { return values_[x]; }
  double& operator[](VertexId x) { return values_[x]; }
  double at(VertexId x) const { return values_.at(x); }

  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  // Vertices with nonzero value.
  std::vector<VertexId> support() const;

  bool all_positive() const;

 private:
  std::vector<double> values_;
};

// Throws std::invalid_argument when f is not aligned with g.
void check_aligned(const WeightedGraph& g, const GraphFunction& f);

}  // namespace phardy
