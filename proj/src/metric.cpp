#include "phardy/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "phardy/calculus.hpp"

namespace phardy {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Distances from source, abandoning labels beyond radius.
std::vector<double> dijkstra(const WeightedGraph& g, const std::vector<double>& w,
                             VertexId source, double radius) {
  std::vector<double> dist(g.num_vertices(), kInf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d > dist[x]) continue;
    for (const Neighbor& nb : g.neighbors(x)) {
      const double cand = d + w[nb.edge];
      if (cand < dist[nb.id] && cand <= radius) {
        dist[nb.id] = cand;
        heap.push({cand, nb.id});
      }
    }
  }
  return dist;
}
}  // namespace

EdgeWeighting::EdgeWeighting(const WeightedGraph& g, std::vector<double> per_edge)
    : w_(std::move(per_edge)) {
  if (w_.size() != g.num_edges()) {
    throw std::invalid_argument("edge weighting must have one value per edge");
  }
  for (double v : w_) {
    if (!(v >= 0.0)) throw std::invalid_argument("edge lengths must be nonnegative");
  }
}

EdgeWeighting EdgeWeighting::unit(const WeightedGraph& g) {
  return EdgeWeighting(g, std::vector<double>(g.num_edges(), 1.0));
}

double EdgeWeighting::operator()(const WeightedGraph& g, VertexId x, VertexId y) const {
  const std::size_t i = g.edge_index(x, y);
  if (i == WeightedGraph::npos) throw std::out_of_range("edge weighting queried off an edge");
  return w_.at(i);
}

bool EdgeWeighting::strictly_positive() const {
  return std::all_of(w_.begin(), w_.end(), [](double v) { return v > 0.0; });
}

DistanceField path_distance(const WeightedGraph& g, const EdgeWeighting& w, VertexId source) {
  g.check_vertex(source);
  if (w.size() != g.num_edges()) throw std::invalid_argument("edge weighting does not match graph");
  for (double v : w.values()) {
    if (!(v >= 0.0)) throw std::invalid_argument("negative or undefined edge length");
  }
  return {source, dijkstra(g, w.values(), source, kInf)};
}

EdgeWeighting canonical_intrinsic_weight(const WeightedGraph& g, Exponent p) {
  std::vector<double> ratio(g.num_vertices());
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    const double deg = degree(g, x);
    ratio[x] = deg > 0.0 ? g.measure(x) / deg : kInf;
  }
  std::vector<double> w;
  w.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    w.push_back(std::pow(std::min(ratio[e.x], ratio[e.y]), 1.0 / p.value()));
  }
  return EdgeWeighting(g, std::move(w));
}

DistanceOracle DistanceOracle::edge_weighting(const WeightedGraph& g, const EdgeWeighting& w) {
  if (w.size() != g.num_edges()) throw std::invalid_argument("edge weighting does not match graph");
  DistanceOracle o;
  o.name_ = "edge_weighting";
  o.per_edge_ = w.values();
  return o;
}

DistanceOracle DistanceOracle::path_metric(const WeightedGraph& g, const EdgeWeighting& w) {
  if (w.size() != g.num_edges()) throw std::invalid_argument("edge weighting does not match graph");
  for (double v : w.values()) {
    if (!(v >= 0.0)) throw std::invalid_argument("negative or undefined edge length");
  }
  DistanceOracle o;
  o.name_ = "path_metric";
  o.per_edge_ = w.values();
  // d_w(x,y) <= w(x,y) on edges, so a search from x only needs radius
  // max_y w(x,y).
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    double radius = 0.0;
    bool pending = false;
    for (const Neighbor& nb : g.neighbors(x)) {
      if (nb.id > x) {
        radius = std::max(radius, w.on_edge(nb.edge));
        pending = true;
      }
    }
    if (!pending) continue;
    const std::vector<double> dist = dijkstra(g, w.values(), x, radius);
    for (const Neighbor& nb : g.neighbors(x)) {
      if (nb.id > x) o.per_edge_[nb.edge] = std::min(o.per_edge_[nb.edge], dist[nb.id]);
    }
  }
  return o;
}

DistanceOracle DistanceOracle::callback(std::string name, Callback fn) {
  DistanceOracle o;
  o.name_ = std::move(name);
  o.fn_ = std::move(fn);
  return o;
}

double DistanceOracle::operator()(const WeightedGraph& g, VertexId x, VertexId y) const {
  double value;
  if (fn_) {
    value = fn_(x, y);
  } else {
    const std::size_t i = g.edge_index(x, y);
    if (i == WeightedGraph::npos) throw std::domain_error("distance oracle queried off an edge");
    value = per_edge_.at(i);
  }
  if (!(value >= 0.0)) {
    throw std::domain_error("sigma undefined on edge (" + std::to_string(x) + "," +
                            std::to_string(y) + ")");
  }
  return value;
}

IntrinsicReport check_intrinsic(const WeightedGraph& g, Exponent p, const DistanceOracle& sigma) {
  IntrinsicReport report;
  report.p = p.value();
  report.slack.resize(g.num_vertices());
  report.min_interior_slack = kInf;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    double sum = 0.0;
    for (const Neighbor& nb : g.neighbors(x)) {
      sum += nb.weight * std::pow(sigma(g, x, nb.id), p.value());
    }
    report.slack[x] = 1.0 - sum / g.measure(x);
    if (g.is_interior(x)) report.min_interior_slack = std::min(report.min_interior_slack, report.slack[x]);
  }
  report.verdict = report.min_interior_slack >= -1e-12;
  return report;
}

double lipschitz_constant(const WeightedGraph& g, const DistanceOracle& sigma,
                          const GraphFunction& f) {
  check_aligned(g, f);
  double lip = 0.0;
  for (const Edge& e : g.edges()) {
    const double diff = std::abs(f[e.x] - f[e.y]);
    if (diff == 0.0) continue;
    const double s = sigma(g, e.x, e.y);
    if (s == 0.0) return kInf;
    lip = std::max(lip, diff / s);
  }
  return lip;
}

std::vector<VertexId> ball(const WeightedGraph& g, const EdgeWeighting& w, VertexId center,
                           double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  const DistanceField field = path_distance(g, w, center);
  std::vector<VertexId> out;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (field.dist[x] <= r) out.push_back(x);
  }
  return out;
}

}  // namespace phardy
