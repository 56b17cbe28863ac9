#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "phardy/exponent.hpp"
#include "phardy/graph.hpp"

namespace phardy {

// Partial derivatives of Q at f; equals 2 m(x) L f(x) at every vertex.
GraphFunction energy_gradient(const WeightedGraph& g, Exponent p, const GraphFunction& f);

struct OptimizerConfig {
  std::vector<VertexId> support;  // empty: every interior vertex
  double armijo = 1e-4;           // sufficient decrease constant
  double shrink = 0.5;            // backtracking factor
  double initial_step = 1.0;     // first trial step; later ones are Barzilai-Borwein guesses
  std::size_t max_backtracks = 60;
  std::size_t max_iterations = 2000;
  std::size_t restarts = 4;  // random positive starts after the given ones
  std::uint64_t seed = 0;
  double tolerance = 1e-13;  // stop when the relative decrease stays below this
  std::vector<GraphFunction> initial;  // starting points tried first
};

struct OptimizerResult {
  double estimate = 0.0;
  GraphFunction minimizer;  // normalised to sum w |phi|^p m = 1
  // Best quotient so far after every accepted step, over all restarts in order.
  std::vector<double> history;
  std::vector<std::vector<double>> trajectories;  // quotient per restart
  std::size_t best_restart = 0;
  std::size_t rejected_starts = 0;  // starts with a vanishing denominator
};

// R(phi) = (Q(phi) + ||phi||_p^p) / sum_x w(x)|phi(x)|^p m(x).
double hardy_quotient(const WeightedGraph& g, Exponent p, const GraphFunction& weight,
                      const GraphFunction& phi);

// Gradient descent with Armijo backtracking on R over functions supported on
// cfg.support; the result is an upper bound for the infimum over that support.
// Throws std::invalid_argument on a support outside the interior, a negative
// weight, a weight vanishing on the support, or when every start is rejected.
OptimizerResult optimal_constant(const WeightedGraph& g, Exponent p, const GraphFunction& weight,
                                 const OptimizerConfig& cfg);

}  // namespace phardy
