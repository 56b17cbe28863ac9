#pragma once

#include <cstddef>
#include <vector>

#include "phardy/graph.hpp"
#include "phardy/rng.hpp"

namespace phardy {

struct RandomGraphOptions {
  std::size_t vertices = 10;
  std::size_t extra_edges = 0;  // added on top of a random spanning tree
  double weight_lo = 0.1, weight_hi = 2.0;
  double measure_lo = 0.1, measure_hi = 2.0;
  // Mark leaves of the spanning tree as outside the truncation.
  bool leaves_exterior = false;
};

// Connected random graph: a random recursive tree plus extra_edges distinct
// chords. Every vertex is interior unless leaves_exterior is set.
WeightedGraph random_graph(Rng& rng, const RandomGraphOptions& options);

// Uniform values in [lo, hi].
GraphFunction random_function(Rng& rng, std::size_t n, double lo, double hi);

// Random values in [-1, 1] on a random nonempty subset of the interior
// vertices (each kept with probability density), zero elsewhere.
GraphFunction random_test_function(Rng& rng, const WeightedGraph& g, double density = 0.5);

// Random values on the vertex range [first, last], zero elsewhere.
GraphFunction random_window_function(Rng& rng, std::size_t n, std::size_t first, std::size_t last,
                                     bool positive = false);

// chi_n(x) = (h(x) - 1/n)_+ * min((2 - sigma(x,o)/n)_+, 1) for a distance
// field sigma(., o).
GraphFunction cutoff_function(const GraphFunction& h, const std::vector<double>& sigma_from_o,
                              double n);

// Piecewise linear map with nodes xs (increasing) and values ys, extended
// by constants; exposes its Lipschitz constant.
struct PiecewiseLinear {
  std::vector<double> xs, ys;
  double operator()(double t) const;
  double lipschitz() const;
};

// Random piecewise linear map on [lo, hi] with Lipschitz constant at most lmax.
PiecewiseLinear random_piecewise_linear(Rng& rng, double lo, double hi, double lmax,
                                        std::size_t nodes = 6);

}  // namespace phardy
