#include "phardy/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace phardy {

WeightedGraph random_graph(Rng& rng, const RandomGraphOptions& o) {
  if (o.vertices < 2) throw std::invalid_argument("random graph needs at least two vertices");
  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<std::size_t> tree_valence(o.vertices, 0);
  for (VertexId v = 1; v < o.vertices; ++v) {
    const VertexId parent = rng.index(v);
    edges.push_back({parent, v, rng.uniform(o.weight_lo, o.weight_hi)});
    seen.insert({parent, v});
    ++tree_valence[parent];
    ++tree_valence[v];
  }
  const std::size_t max_pairs = o.vertices * (o.vertices - 1) / 2;
  std::size_t wanted = std::min(o.extra_edges, max_pairs - edges.size());
  while (wanted > 0) {
    VertexId a = rng.index(o.vertices), b = rng.index(o.vertices);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    edges.push_back({a, b, rng.uniform(o.weight_lo, o.weight_hi)});
    --wanted;
  }
  std::vector<double> m(o.vertices);
  for (double& v : m) v = rng.uniform(o.measure_lo, o.measure_hi);
  std::vector<bool> interior(o.vertices, true);
  if (o.leaves_exterior) {
    for (VertexId v = 0; v < o.vertices; ++v) interior[v] = tree_valence[v] > 1;
  }
  return WeightedGraph(o.vertices, std::move(m), edges, std::move(interior));
}

GraphFunction random_function(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return GraphFunction(std::move(v));
}

GraphFunction random_test_function(Rng& rng, const WeightedGraph& g, double density) {
  std::vector<VertexId> interior;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (g.is_interior(x)) interior.push_back(x);
  }
  if (interior.empty()) throw std::invalid_argument("graph has no interior vertex");
  GraphFunction f(g.num_vertices(), 0.0);
  for (VertexId x : interior) {
    if (rng.bernoulli(density)) f[x] = rng.uniform(-1.0, 1.0);
  }
  if (f.support().empty()) f[interior[rng.index(interior.size())]] = rng.uniform(0.5, 1.0);
  return f;
}

GraphFunction random_window_function(Rng& rng, std::size_t n, std::size_t first, std::size_t last,
                                     bool positive) {
  if (first > last || last >= n) throw std::invalid_argument("window outside the vertex range");
  GraphFunction f(n, 0.0);
  for (std::size_t x = first; x <= last; ++x) {
    f[x] = positive ? rng.uniform(0.1, 1.0) : rng.uniform(-1.0, 1.0);
  }
  return f;
}

GraphFunction cutoff_function(const GraphFunction& h, const std::vector<double>& sigma_from_o,
                              double n) {
  if (sigma_from_o.size() != h.size()) throw std::invalid_argument("distance field size mismatch");
  if (!(n > 0.0)) throw std::invalid_argument("cutoff index must be positive");
  std::vector<double> out(h.size());
  for (std::size_t x = 0; x < h.size(); ++x) {
    const double a = std::max(h[x] - 1.0 / n, 0.0);
    const double b = std::min(std::max(2.0 - sigma_from_o[x] / n, 0.0), 1.0);
    out[x] = a * b;
  }
  return GraphFunction(std::move(out));
}

double PiecewiseLinear::operator()(double t) const {
  if (t <= xs.front()) return ys.front();
  if (t >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double s = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + s * (ys[i] - ys[i - 1]);
}

double PiecewiseLinear::lipschitz() const {
  double l = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    l = std::max(l, std::abs(ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]));
  }
  return l;
}

PiecewiseLinear random_piecewise_linear(Rng& rng, double lo, double hi, double lmax,
                                        std::size_t nodes) {
  if (nodes < 2 || !(hi > lo)) throw std::invalid_argument("bad piecewise linear range");
  PiecewiseLinear c;
  c.xs.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    c.xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nodes - 1);
  }
  c.ys.resize(nodes);
  c.ys[0] = rng.uniform(-1.0, 1.0);
  for (std::size_t i = 1; i < nodes; ++i) {
    c.ys[i] = c.ys[i - 1] + rng.uniform(-lmax, lmax) * (c.xs[i] - c.xs[i - 1]);
  }
  return c;
}

}  // namespace phardy
