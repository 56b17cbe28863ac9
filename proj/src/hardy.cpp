#include "phardy/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "phardy/calculus.hpp"

namespace phardy {

namespace {

void require_positive(const WeightedGraph& g, const GraphFunction& h) {
  check_aligned(g, h);
  for (std::size_t x = 0; x < h.size(); ++x) {
    if (!(h[x] > 0.0)) {
      throw std::invalid_argument("h must be positive, h(" + std::to_string(x) +
                                  ") = " + std::to_string(h[x]));
    }
  }
}

void require_interior(const WeightedGraph& g, VertexId x) {
  g.check_vertex(x);
  if (!g.is_interior(x)) {
    throw std::invalid_argument("vertex " + std::to_string(x) + " is not interior");
  }
}

GraphFunction map_values(const GraphFunction& f, const std::function<double(double)>& fn) {
  std::vector<double> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = fn(f[x]);
  return GraphFunction(std::move(out));
}

double checked_derivative(const ConcaveMap& phi, double t) {
  const double d = phi.derivative(t);
  if (!std::isfinite(d) || d < 0.0) {
    throw std::domain_error(phi.name + "' is not finite and nonnegative at " + std::to_string(t));
  }
  return d;
}

}  // namespace

double Margin::scale() const { return std::max({std::abs(lhs), std::abs(rhs), 1.0}); }

CompIdentity comp_identity(const WeightedGraph& g, Exponent p, const GraphFunction& h, VertexId x) {
  require_positive(g, h);
  require_interior(g, x);
  const double pp = p.value();
  double sum = 0.0;
  for (const Neighbor& nb : g.neighbors(x)) {
    const double d = h[x] - h[nb.id];
    sum += nb.weight * (h[x] + h[nb.id]) * signed_power(d, pp - 1.0);
  }
  CompIdentity out;
  out.lhs = 2.0 * h[x] * laplacian(g, p, h, x);
  out.rhs = grad_norm_pow(g, p, h, x) + sum / g.measure(x);
  out.residual = out.lhs - out.rhs;
  return out;
}

Margin main_estimate_gap(const WeightedGraph& g, Exponent p, const GraphFunction& h, VertexId x) {
  require_positive(g, h);
  require_interior(g, x);
  const double pp = p.value();
  const GraphFunction s = map_values(h, [](double t) { return std::sqrt(t); });
  Margin out;
  out.lhs = 2.0 * s[x] * laplacian(g, p, s, x);
  out.rhs = grad_norm_pow(g, p, s, x) +
            laplacian(g, p, h, x) / (std::pow(2.0, pp - 2.0) * std::pow(h[x], (pp - 2.0) / 2.0));
  return out;
}

ConcaveMap ConcaveMap::identity() {
  return {"identity", [](double t) { return t; }, [](double) { return 1.0; }};
}

ConcaveMap ConcaveMap::sqrt() {
  return {"sqrt", [](double t) { return std::sqrt(t); },
          [](double t) { return 0.5 / std::sqrt(t); }};
}

ConcaveMap ConcaveMap::power(double a) {
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("power map needs 0 < a <= 1");
  return {"power(" + std::to_string(a) + ")", [a](double t) { return std::pow(t, a); },
          [a](double t) { return a == 1.0 ? 1.0 : a * std::pow(t, a - 1.0); }};
}

ConcaveMap ConcaveMap::log1p() {
  return {"log1p", [](double t) { return std::log1p(t); },
          [](double t) { return 1.0 / (1.0 + t); }};
}

const char* to_string(ChainReading reading) {
  switch (reading) {
    case ChainReading::infimum: return "infimum";
    case ChainReading::per_neighbor: return "per_neighbor";
    case ChainReading::literal_min: return "literal_min";
  }
  return "unknown";
}

Margin chain_lower_bound_gap(const WeightedGraph& g, Exponent p, const GraphFunction& h,
                             const ConcaveMap& phi, VertexId x, ChainReading reading) {
  require_positive(g, h);
  g.check_vertex(x);
  const double pp = p.value();
  const GraphFunction composed = map_values(h, phi.value);
  Margin out;
  out.lhs = grad_norm_pow(g, p, composed, x);
  if (reading == ChainReading::per_neighbor) {
    double sum = 0.0;
    for (const Neighbor& nb : g.neighbors(x)) {
      const double d = checked_derivative(phi, std::max(h[x], h[nb.id]));
      sum += nb.weight * std::pow(d, pp) * std::pow(std::abs(h[x] - h[nb.id]), pp);
    }
    out.rhs = sum / g.measure(x);
    return out;
  }
  double inf = std::numeric_limits<double>::infinity();
  for (const Neighbor& nb : g.neighbors(x)) {
    const double arg = reading == ChainReading::literal_min ? std::min(h[x], h[nb.id])
                                                            : std::max(h[x], h[nb.id]);
    inf = std::min(inf, checked_derivative(phi, arg));
  }
  out.rhs = g.valence(x) == 0 ? 0.0 : std::pow(inf, pp) * grad_norm_pow(g, p, h, x);
  return out;
}

Margin picone_check(const WeightedGraph& g, Exponent p, const GraphFunction& h,
                    const GraphFunction& phi) {
  check_aligned(g, h);
  check_aligned(g, phi);
  const double pp = p.value();
  double sum = 0.0;
  for (VertexId x : phi.support()) {
    if (!g.is_interior(x)) {
      throw std::invalid_argument("test function touches non-interior vertex " + std::to_string(x));
    }
    if (!(h[x] > 0.0)) throw std::invalid_argument("h must be positive on the support");
    for (const Neighbor& nb : g.neighbors(x)) {
      if (!(h[nb.id] > 0.0)) throw std::invalid_argument("h must be positive next to the support");
    }
    sum += laplacian(g, p, h, x) / std::pow(h[x], pp - 1.0) * std::pow(std::abs(phi[x]), pp) *
           g.measure(x);
  }
  return {energy(g, p, phi), 2.0 / pp * sum};
}

bool SuperharmonicCertificate::covers(std::size_t index) const {
  if (index < scan_lo) return false;
  if (index > scan_hi && !tail_certified) return false;
  return !std::binary_search(exceptional.begin(), exceptional.end(), index);
}

std::optional<SuperharmonicCertificate> superharmonic_certificate(const WeightedGraph& g,
                                                                  Exponent p,
                                                                  const GraphFunction& h,
                                                                  const CertificateOptions& options) {
  require_positive(g, h);
  const double pp = p.value();
  std::vector<std::size_t> k(options.exceptional.begin(), options.exceptional.end());
  for (VertexId x : k) g.check_vertex(x);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (!g.is_interior(x)) k.push_back(x);
  }
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());

  std::vector<VertexId> scan;
  std::vector<double> lap;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (std::binary_search(k.begin(), k.end(), x)) continue;
    scan.push_back(x);
    lap.push_back(laplacian(g, p, h, x));
  }
  if (scan.empty()) throw std::invalid_argument("no interior vertex outside the exceptional set");

  double lambda = 0.0;
  if (options.lambda) {
    lambda = *options.lambda;
  } else {
    lambda = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scan.size(); ++i) {
      lambda = std::min(lambda, lap[i] / std::pow(h[scan[i]], pp - 1.0));
    }
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scan.size(); ++i) {
    margin = std::min(margin, lap[i] - lambda * std::pow(h[scan[i]], pp - 1.0));
  }

  SuperharmonicCertificate cert;
  cert.lambda = lambda;
  cert.exceptional = std::move(k);
  cert.margin = margin;
  cert.scan_lo = 0;
  cert.scan_hi = g.num_vertices() - 1;
  cert.target = "graph";
  cert.note = "holds on the listed interior vertices only; supports must avoid K";
  if (!cert.valid()) return std::nullopt;
  return cert;
}

double edge_ratio(const WeightedGraph& g, const GraphFunction& h) {
  require_positive(g, h);
  double out = 1.0;
  for (const Edge& e : g.edges()) {
    out = std::max({out, h[e.x] / h[e.y], h[e.y] / h[e.x]});
  }
  return out;
}

HardyWeights hardy_weights(const WeightedGraph& g, Exponent p, const GraphFunction& h, VertexId x) {
  require_positive(g, h);
  require_interior(g, x);
  const double pp = p.value();
  const GraphFunction s = map_values(h, [](double t) { return std::sqrt(t); });
  return {grad_norm_pow(g, p, s, x) / std::pow(h[x], pp / 2.0),
          grad_norm_pow(g, p, h, x) / std::pow(h[x], pp)};
}

HardyReport verify_hardy(const WeightedGraph& g, Exponent p, const GraphFunction& h,
                         const SuperharmonicCertificate& cert,
                         const std::vector<GraphFunction>& phis, const HardyOptions& options) {
  require_positive(g, h);
  const double pp = p.value();
  HardyReport report;
  report.p = pp;
  report.lambda = cert.lambda;
  report.edge_ratio = options.edge_ratio ? *options.edge_ratio : edge_ratio(g, h);
  if (!(report.edge_ratio >= 1.0)) throw std::invalid_argument("edge ratio must be at least 1");
  report.c1 = 1.0 / pp;
  report.c2 = cert.lambda / (pp * std::pow(2.0, pp - 2.0));
  report.c3 = 1.0 / (pp * std::pow(2.0, pp) * std::pow(report.edge_ratio, pp / 2.0));
  report.note = "lambda-certificate checked on the supports (K empty there); K is not absorbed";

  std::vector<HardyWeights> weights(g.num_vertices());
  std::vector<bool> have(g.num_vertices(), false);
  for (const GraphFunction& phi : phis) {
    check_aligned(g, phi);
    double half = 0.0, full = 0.0;
    for (VertexId x : phi.support()) {
      if (!g.is_interior(x)) {
        throw std::invalid_argument("test function touches non-interior vertex " + std::to_string(x));
      }
      if (!cert.covers(x)) {
        throw std::invalid_argument("certificate does not cover vertex " + std::to_string(x));
      }
      if (!have[x]) {
        weights[x] = hardy_weights(g, p, h, x);
        have[x] = true;
      }
      const double a = std::pow(std::abs(phi[x]), pp) * g.measure(x);
      half += weights[x].w_half * a;
      full += weights[x].w_full * a;
    }
    const double q = energy(g, p, phi);
    const double norm = lp_norm_pow(g, p, phi);
    const Margin first{q, report.c1 * half + report.c2 * norm};
    const Margin second{q, report.c3 * full + report.c2 * norm};
    report.first.push_back(first);
    report.second.push_back(second);
    report.min_first = std::min(report.min_first, first.value() / first.scale());
    report.min_second = std::min(report.min_second, second.value() / second.scale());
    report.verdict = report.verdict && first.holds(options.rel_tol) && second.holds(options.rel_tol);
  }
  return report;
}

const char* to_string(TailVerdict verdict) {
  switch (verdict) {
    case TailVerdict::certified_finite: return "certified-finite";
    case TailVerdict::certified_infinite: return "certified-infinite";
    case TailVerdict::undetermined: return "undetermined";
  }
  return "unknown";
}

HarrisNorm harris_weight_norm(const WeightedGraph& g, Exponent p, const GraphFunction& h,
                              const GraphFunction& f) {
  require_positive(g, h);
  check_aligned(g, f);
  const double pp = p.value();
  HarrisNorm out;
  bool inside = true;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (!g.is_interior(x)) {
      if (f[x] != 0.0) inside = false;
      continue;
    }
    const double a = std::pow(std::abs(f[x]), pp) * g.measure(x);
    out.partial += a * grad_norm_pow(g, p, h, x) / std::pow(h[x], pp);
    out.partial_over_h += a / std::pow(h[x], pp);
  }
  out.log_partial = std::log(out.partial);
  out.log_partial_over_h = std::log(out.partial_over_h);
  if (inside) {
    out.tail = out.tail_over_h = TailVerdict::certified_finite;
    out.reason = "f is supported on the interior, the sums are exact";
  } else {
    out.reason = "f does not vanish outside the interior of the truncation";
  }
  return out;
}

}  // namespace phardy
