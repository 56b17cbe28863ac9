#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "phardy/graph.hpp"
#include "phardy/rng.hpp"

namespace testing {

inline bool close(double a, double b, double rel = 1e-10, double abs = 1e-12) {
  return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

inline phardy::WeightedGraph path_graph(std::size_t n, double b = 1.0, double m = 1.0,
                                        std::vector<bool> interior = {}) {
  std::vector<phardy::Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, b});
  return phardy::WeightedGraph(n, std::vector<double>(n, m), edges, std::move(interior));
}

// Dense copy of b and m built from the edge list only, for reference sums
// that do not go through the adjacency rows.
struct Dense {
  std::size_t n = 0;
  std::vector<double> b;
  std::vector<double> m;

  explicit Dense(const phardy::WeightedGraph& g)
      : n(g.num_vertices()), b(n * n, 0.0), m(g.measures()) {
    for (const phardy::Edge& e : g.edges()) {
      b[e.x * n + e.y] = e.weight;
      b[e.y * n + e.x] = e.weight;
    }
  }
  double w(std::size_t x, std::size_t y) const { return b[x * n + y]; }

  double energy(double p, const std::vector<double>& f) const {
    double s = 0.0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) s += w(x, y) * std::pow(std::abs(f[x] - f[y]), p);
    return s / p;
  }
  double grad_pow(double p, const std::vector<double>& f, std::size_t x) const {
    double s = 0.0;
    for (std::size_t y = 0; y < n; ++y) s += w(x, y) * std::pow(std::abs(f[x] - f[y]), p);
    return s / m[x];
  }
  double laplacian(double p, const std::vector<double>& f, std::size_t x) const {
    double s = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      const double d = f[x] - f[y];
      if (w(x, y) != 0.0 && d != 0.0) s += w(x, y) * d * std::pow(std::abs(d), p - 2.0);
    }
    return s / m[x];
  }
  double degree(std::size_t x) const {
    double s = 0.0;
    for (std::size_t y = 0; y < n; ++y) s += w(x, y);
    return s;
  }
};

inline std::vector<double> values(const phardy::GraphFunction& f) {
  return {f.values().begin(), f.values().end()};
}

inline const std::vector<double>& sweep_exponents() {
  static const std::vector<double> ps = {1.3, 1.5, 2.0, 2.7, 3.0, 4.0};
  return ps;
}

}  // namespace testing
