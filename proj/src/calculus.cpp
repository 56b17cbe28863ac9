#include "phardy/calculus.hpp"

#include <cmath>

namespace phardy {

double signed_power(double t, double q) {
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), q), t);
}

double degree(const WeightedGraph& g, VertexId x) {
  double sum = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) sum += nb.weight;
  return sum;
}

double degree_ratio(const WeightedGraph& g, VertexId x) { return degree(g, x) / g.measure(x); }

double grad_norm_pow(const WeightedGraph& g, Exponent p, const GraphFunction& f, VertexId x) {
  check_aligned(g, f);
  const double fx = f[x];
  double sum = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) {
    const double d = fx - f[nb.id];
    if (d != 0.0) sum += nb.weight * std::pow(std::abs(d), p.value());
  }
  return sum / g.measure(x);
}

double grad_norm(const WeightedGraph& g, Exponent p, const GraphFunction& f, VertexId x) {
  return std::pow(grad_norm_pow(g, p, f, x), 1.0 / p.value());
}

double energy(const WeightedGraph& g, Exponent p, const GraphFunction& f) {
  check_aligned(g, f);
  double sum = 0.0;
  for (const Edge& e : g.edges()) {
    const double d = f[e.x] - f[e.y];
    if (d != 0.0) sum += e.weight * std::pow(std::abs(d), p.value());
  }
  // Each unordered edge appears twice in the ordered double sum.
  return 2.0 * sum / p.value();
}

double laplacian(const WeightedGraph& g, Exponent p, const GraphFunction& f, VertexId x) {
  check_aligned(g, f);
  const double fx = f[x];
  const double q = p.value() - 1.0;
  double sum = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) {
    const double d = fx - f[nb.id];
    if (d != 0.0) sum += nb.weight * signed_power(d, q);
  }
  return sum / g.measure(x);
}

GraphFunction laplacian_field(const WeightedGraph& g, Exponent p, const GraphFunction& f) {
  std::vector<double> out(g.num_vertices());
  for (VertexId x = 0; x < g.num_vertices(); ++x) out[x] = laplacian(g, p, f, x);
  return GraphFunction(std::move(out));
}

double lp_norm_pow(const WeightedGraph& g, Exponent p, const GraphFunction& f) {
  check_aligned(g, f);
  double sum = 0.0;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (f[x] != 0.0) sum += std::pow(std::abs(f[x]), p.value()) * g.measure(x);
  }
  return sum;
}

double lp_norm(const WeightedGraph& g, Exponent p, const GraphFunction& f) {
  return std::pow(lp_norm_pow(g, p, f), 1.0 / p.value());
}

double sobolev_norm_p(const WeightedGraph& g, Exponent p, const GraphFunction& f) {
  return energy(g, p, f) + lp_norm_pow(g, p, f);
}

}  // namespace phardy
