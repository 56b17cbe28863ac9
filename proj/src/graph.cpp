#include "phardy/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phardy {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<double> measure,
                             std::span<const Edge> edges,
                             std::vector<bool> interior)
    : measure_(std::move(measure)), interior_(std::move(interior)) {
  if (measure_.size() != n) {
    throw std::invalid_argument("measure has " + std::to_string(measure_.size()) +
                                " entries, expected " + std::to_string(n));
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!(measure_[x] > 0.0) || !std::isfinite(measure_[x])) {
      throw std::invalid_argument("measure must be positive and finite at vertex " +
                                  std::to_string(x));
    }
  }
  if (interior_.empty()) {
    interior_.assign(n, true);
  } else if (interior_.size() != n) {
    throw std::invalid_argument("interior mask length does not match vertex count");
  }

  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.x >= n || e.y >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.x) + "," +
                                  std::to_string(e.y) + ") references a missing vertex");
    }
    if (e.x == e.y) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.x));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weight must be positive and finite");
    }
    edges_.push_back({std::min(e.x, e.y), std::max(e.x, e.y), e.weight});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].x == edges_[i - 1].x && edges_[i].y == edges_[i - 1].y) {
      throw std::invalid_argument("pair (" + std::to_string(edges_[i].x) + "," +
                                  std::to_string(edges_[i].y) + ") listed twice");
    }
  }

  row_offset_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++row_offset_[e.x + 1];
    ++row_offset_[e.y + 1];
  }
  for (std::size_t x = 0; x < n; ++x) row_offset_[x + 1] += row_offset_[x];
  adjacency_.resize(row_offset_[n]);
  std::vector<std::size_t> cursor(row_offset_.begin(), row_offset_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[cursor[e.x]++] = {e.y, e.weight, i};
    adjacency_[cursor[e.y]++] = {e.x, e.weight, i};
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(row_offset_[x]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(row_offset_[x + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  }
}

std::size_t WeightedGraph::num_interior() const {
  return static_cast<std::size_t>(std::count(interior_.begin(), interior_.end(), true));
}

void WeightedGraph::check_vertex(VertexId x) const {
  if (x >= num_vertices()) {
    throw std::out_of_range("vertex " + std::to_string(x) + " out of range (n = " +
                            std::to_string(num_vertices()) + ")");
  }
}

std::span<const Neighbor> WeightedGraph::neighbors(VertexId x) const {
  check_vertex(x);
  return {adjacency_.data() + row_offset_[x], row_offset_[x + 1] - row_offset_[x]};
}

std::size_t WeightedGraph::edge_index(VertexId x, VertexId y) const {
  auto row = neighbors(x);
  auto it = std::lower_bound(row.begin(), row.end(), y,
                             [](const Neighbor& nb, VertexId v) { return nb.id < v; });
  return (it != row.end() && it->id == y) ? it->edge : npos;
}

double WeightedGraph::weight(VertexId x, VertexId y) const {
  const std::size_t i = edge_index(x, y);
  return i == npos ? 0.0 : edges_[i].weight;
}

GraphFunction::GraphFunction(std::size_t n, double fill) : values_(n, fill) {
  if (!std::isfinite(fill)) throw std::invalid_argument("graph function entries must be finite");
}

GraphFunction::GraphFunction(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("graph function entries must be finite");
  }
}

std::vector<VertexId> GraphFunction::support() const {
  std::vector<VertexId> out;
  for (VertexId x = 0; x < values_.size(); ++x) {
    if (values_[x] != 0.0) out.push_back(x);
  }
  return out;
}

bool GraphFunction::all_positive() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

void check_aligned(const WeightedGraph& g, const GraphFunction& f) {
  if (f.size() != g.num_vertices()) {
    throw std::invalid_argument("function has " + std::to_string(f.size()) +
                                " values but the graph has " +
                                std::to_string(g.num_vertices()) + " vertices");
  }
}

}  // namespace phardy
