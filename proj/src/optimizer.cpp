#include "phardy/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "phardy/calculus.hpp"
#include "phardy/rng.hpp"

namespace phardy {

namespace {

constexpr double kTinyDenominator = 1e-300;

struct Problem {
  const WeightedGraph& g;
  Exponent p;
  const GraphFunction& w;
  std::vector<VertexId> support;

  double denominator(const GraphFunction& phi) const {
    double d = 0.0;
    for (VertexId x : support) d += w[x] * std::pow(std::abs(phi[x]), p.value()) * g.measure(x);
    return d;
  }

  double quotient(const GraphFunction& phi, double d) const {
    return (energy(g, p, phi) + lp_norm_pow(g, p, phi)) / d;
  }

  // Rescale phi to denominator 1; returns false when d is too small.
  bool normalise(GraphFunction& phi) const {
    const double d = denominator(phi);
    if (!(d > kTinyDenominator) || !std::isfinite(d)) return false;
    const double s = std::pow(d, -1.0 / p.value());
    for (VertexId x : support) phi[x] *= s;
    return true;
  }

  // Gradient of R on the support, given denominator d and quotient r.
  std::vector<double> gradient(const GraphFunction& phi, double d, double r) const {
    const double pp = p.value();
    std::vector<double> out(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
      const VertexId x = support[i];
      const double m = g.measure(x);
      const double sp = signed_power(phi[x], pp - 1.0);
      const double num = 2.0 * m * laplacian(g, p, phi, x) + pp * m * sp;
      const double den = pp * w[x] * m * sp;
      out[i] = (num - r * den) / d;
    }
    return out;
  }
};

std::vector<VertexId> resolve_support(const WeightedGraph& g, const OptimizerConfig& cfg) {
  std::vector<VertexId> s = cfg.support;
  if (s.empty()) {
    for (VertexId x = 0; x < g.num_vertices(); ++x) {
      if (g.is_interior(x)) s.push_back(x);
    }
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) throw std::invalid_argument("optimizer support is empty");
  for (VertexId x : s) {
    g.check_vertex(x);
    if (!g.is_interior(x)) {
      throw std::invalid_argument("optimizer support contains non-interior vertex " + std::to_string(x));
    }
  }
  return s;
}

}  // namespace

GraphFunction energy_gradient(const WeightedGraph& g, Exponent p, const GraphFunction& f) {
  check_aligned(g, f);
  GraphFunction out(g.num_vertices(), 0.0);
  for (const Edge& e : g.edges()) {
    const double t = 2.0 * e.weight * signed_power(f[e.x] - f[e.y], p.value() - 1.0);
    out[e.x] += t;
    out[e.y] -= t;
  }
  return out;
}

double hardy_quotient(const WeightedGraph& g, Exponent p, const GraphFunction& weight,
                      const GraphFunction& phi) {
  check_aligned(g, weight);
  check_aligned(g, phi);
  double d = 0.0;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    d += weight[x] * std::pow(std::abs(phi[x]), p.value()) * g.measure(x);
  }
  if (!(d > kTinyDenominator)) throw std::invalid_argument("weighted norm of phi vanishes");
  return (energy(g, p, phi) + lp_norm_pow(g, p, phi)) / d;
}

OptimizerResult optimal_constant(const WeightedGraph& g, Exponent p, const GraphFunction& weight,
                                 const OptimizerConfig& cfg) {
  check_aligned(g, weight);
  for (std::size_t x = 0; x < weight.size(); ++x) {
    if (weight[x] < 0.0) throw std::invalid_argument("weight must be nonnegative");
  }
  const Problem prob{g, p, weight, resolve_support(g, cfg)};
  {
    bool any = false;
    for (VertexId x : prob.support) any = any || weight[x] > 0.0;
    if (!any) throw std::invalid_argument("weight vanishes on the support");
  }

  std::vector<GraphFunction> starts;
  for (const GraphFunction& f : cfg.initial) {
    check_aligned(g, f);
    GraphFunction s(g.num_vertices(), 0.0);
    for (VertexId x : prob.support) s[x] = f[x];
    starts.push_back(std::move(s));
  }
  const Rng root(cfg.seed, 0x6f7074);
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    Rng rng = root.split(r);
    GraphFunction s(g.num_vertices(), 0.0);
    for (VertexId x : prob.support) s[x] = rng.uniform(0.5, 1.5);
    starts.push_back(std::move(s));
  }

  OptimizerResult result;
  result.estimate = std::numeric_limits<double>::infinity();
  double best = result.estimate;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    GraphFunction phi = starts[k];
    if (!prob.normalise(phi)) {
      ++result.rejected_starts;
      continue;
    }
    double r = prob.quotient(phi, 1.0);
    std::vector<double> traj{r};
    auto record = [&](double value) {
      if (value < best) {
        best = value;
        result.estimate = value;
        result.minimizer = phi;
        result.best_restart = k;
      }
      result.history.push_back(best);
    };
    record(r);

    double step = cfg.initial_step;
    std::size_t quiet = 0;
    std::vector<double> prev_grad;
    GraphFunction prev_phi;
    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
      const std::vector<double> grad = prob.gradient(phi, 1.0, r);
      double gg = 0.0;
      for (double v : grad) gg += v * v;
      if (!(gg > 0.0)) break;
      if (!prev_grad.empty()) {
        // Barzilai-Borwein guess s.s / s.y, doubling when the curvature is not positive
        double ss = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < prob.support.size(); ++i) {
          const VertexId x = prob.support[i];
          const double sx = phi[x] - prev_phi[x];
          ss += sx * sx;
          sy += sx * (grad[i] - prev_grad[i]);
        }
        step = sy > 0.0 ? ss / sy : step * 2.0;
        step = std::clamp(step, 1e-12, 1e6);
      }
      bool accepted = false;
      GraphFunction trial = phi;
      for (std::size_t b = 0; b < cfg.max_backtracks; ++b, step *= cfg.shrink) {
        for (std::size_t i = 0; i < prob.support.size(); ++i) {
          trial[prob.support[i]] = phi[prob.support[i]] - step * grad[i];
        }
        if (!prob.normalise(trial)) continue;
        const double rt = prob.quotient(trial, 1.0);
        if (rt <= r - cfg.armijo * step * gg) {
          const double decrease = (r - rt) / std::max(std::abs(r), 1e-300);
          prev_phi = phi;
          prev_grad = grad;
          phi = trial;
          r = rt;
          accepted = true;
          quiet = decrease < cfg.tolerance ? quiet + 1 : 0;
          break;
        }
      }
      if (!accepted) break;
      traj.push_back(r);
      record(r);
      if (quiet >= 5) break;
    }
    result.trajectories.push_back(std::move(traj));
  }
  if (result.trajectories.empty()) {
    throw std::invalid_argument("every starting point has a vanishing weighted norm");
  }
  return result;
}

}  // namespace phardy
