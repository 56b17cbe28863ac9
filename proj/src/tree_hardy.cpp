#include "phardy/tree_hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace phardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower bound for log(k(n) (alpha(n)/alpha(n-1))^(p-1)), nondecreasing in n.
double laplacian_sign_bound(const SymTree& t, Exponent p, std::size_t n) {
  const double q = (p.value() - 1.0) / p.value();
  const double nn = static_cast<double>(n);
  if (t.family() == TreeFamily::exponential) {
    const double lg = std::log(t.gamma());
    return std::log(t.c_k()) + nn * lg +
           q * (std::log(t.eta()) - lg -
                std::log1p(std::exp(std::log(2.0) - std::log(t.c_k()) - (nn + 1.0) * lg)));
  }
  if (t.family() == TreeFamily::polynomial) {
    const double x = nn + 1.0;
    return std::log(t.c_k()) + t.gamma() * std::log(x) +
           q * ((t.eta() - t.gamma()) * std::log1p(1.0 / x) -
                std::log1p(2.0 / (t.c_k() * std::pow(x + 1.0, t.gamma()))));
  }
  return -kInf;
}

bool inequality_holds(const SymTree& t, Exponent p, const BoundaryDistance* table, double lambda,
                      std::size_t n, double* value) {
  const double lap = n == 0 ? sym_laplacian_delta_root(t, p) : sym_laplacian_delta(t, p, n);
  double rhs = 0.0;
  if (lambda != 0.0) {
    const Interval d = table->at(n);
    rhs = lambda * std::pow(lambda > 0.0 ? d.hi : d.lo, p.value() - 1.0);
  }
  *value = lap - rhs;
  return *value >= 0.0;
}

// Smallest n0 with the inequality on [n0, horizon]; horizon+1 when it fails at the horizon.
std::size_t scan_n0(const SymTree& t, Exponent p, std::size_t horizon, double lambda) {
  std::optional<BoundaryDistance> table;
  if (lambda != 0.0) table.emplace(t, p, horizon);
  double v = 0.0;
  for (std::size_t n = horizon + 1; n-- > 0;) {
    if (!inequality_holds(t, p, table ? &*table : nullptr, lambda, n, &v)) return n + 1;
  }
  return 0;
}

void require_nonempty(const SymTree& t, Exponent p) {
  const BoundaryClassification c = boundary_classification(t, p);
  if (c.kind != BoundaryKind::nonempty) {
    throw std::domain_error("certificate for delta needs a nonempty boundary: " + c.reason);
  }
}

struct LogSum {
  double max = -kInf;
  double scaled = 0.0;
  void add(double log_term) {
    if (log_term == -kInf) return;
    if (log_term > max) {
      scaled = scaled * std::exp(max - log_term) + 1.0;
      max = log_term;
    } else {
      scaled += std::exp(log_term - max);
    }
  }
  double log_value() const { return max == -kInf ? -kInf : max + std::log(scaled); }
};

// Lower bounds, nondecreasing in n, for log k(n), log m(n+1)/m(n) and
// log (k(n)+1)/(k(n+1)+1).
struct RatioBounds {
  double log_k = 0.0;
  double log_m = 0.0;
  double log_kk = 0.0;
};

RatioBounds ratio_bounds(const SymTree& t, std::size_t n) {
  RatioBounds r;
  const double nn = static_cast<double>(n);
  if (t.family() == TreeFamily::exponential) {
    const double lg = std::log(t.gamma());
    r.log_k = std::log(t.c_k()) + nn * lg;
    r.log_m = std::log(t.eta());
    r.log_kk = -std::log(t.gamma() + std::exp(std::log(2.0) - std::log(t.c_k()) - nn * lg));
  } else {
    const double x = nn + 1.0;
    r.log_k = std::log(t.c_k()) + t.gamma() * std::log(x);
    r.log_m = t.eta() * std::log1p(1.0 / x);
    r.log_kk = -std::log(std::pow(1.0 + 1.0 / x, t.gamma()) + 2.0 / (t.c_k() * std::pow(x, t.gamma())));
  }
  return r;
}

}  // namespace

std::optional<TreeCertificateScan> superharmonic_certificate(const SymTree& t, Exponent p,
                                                             std::size_t horizon, double lambda) {
  require_nonempty(t, p);
  TreeCertificateScan scan;
  scan.n0 = scan_n0(t, p, horizon, lambda);
  if (scan.n0 > horizon) return std::nullopt;
  scan.n0_doubled = scan_n0(t, p, 2 * horizon, lambda);
  scan.stable = scan.n0 == scan.n0_doubled;
  scan.tail_log_bound = laplacian_sign_bound(t, p, horizon + 1);

  std::optional<BoundaryDistance> table;
  if (lambda != 0.0) table.emplace(t, p, horizon);
  SuperharmonicCertificate& cert = scan.cert;
  cert.lambda = lambda;
  cert.margin = kInf;
  for (std::size_t n = scan.n0; n <= horizon; ++n) {
    double v = 0.0;
    inequality_holds(t, p, table ? &*table : nullptr, lambda, n, &v);
    cert.margin = std::min(cert.margin, v);
  }
  for (std::size_t n = 0; n < scan.n0; ++n) cert.exceptional.push_back(n);
  cert.scan_lo = scan.n0;
  cert.scan_hi = horizon;
  cert.tail_certified = lambda <= 0.0 && scan.tail_log_bound > 0.0;
  cert.target = std::string(to_string(t.family())) + " tree, h = delta";
  cert.note = cert.tail_certified
                  ? "beyond the horizon L delta >= 0 follows from the family bound on k alpha^(p-1)/alpha^(p-1)"
                  : "checked on the scanned spheres only";
  return scan;
}

TreeEdgeRatio edge_ratio(const SymTree& t, Exponent p, std::size_t n_max) {
  const BoundaryDistance table(t, p, n_max + 1);
  const double pp = p.value();
  TreeEdgeRatio out;
  out.ratios.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.ratios[n] = table.mid(n) / table.mid(n + 1);
    const double upper = (1.0 + table.alpha(n) / table.at(n + 1).lo) * (1.0 + 1e-15);
    if (upper > out.scanned_max) {
      out.scanned_max = upper;
      out.argmax = n;
    }
  }
  const double nm = static_cast<double>(n_max);
  if (t.family() == TreeFamily::exponential) {
    const double xi = std::pow(t.eta() / t.gamma(), 1.0 / pp);
    const double eps = std::exp(std::log(2.0) - std::log(t.c_k()) - (nm + 3.0) * std::log(t.gamma()));
    out.tail_bound = std::pow(1.0 + eps, 1.0 / pp) * (1.0 - xi) / xi;
  } else {
    const double s = (t.gamma() - t.eta()) / pp;
    const double eps = 2.0 / (t.c_k() * std::pow(nm + 4.0, t.gamma()));
    out.tail_bound = std::pow(1.0 + eps, 1.0 / pp) * (s - 1.0) * std::pow(nm + 4.0, s - 1.0) /
                     std::pow(nm + 3.0, s);
  }
  out.tail_bound *= 1.0 + 1e-14;
  out.certified_sup = std::max(out.scanned_max, 1.0 + out.tail_bound);
  return out;
}

TreeHardyInstance tree_hardy_instance(const SymTree& t, Exponent p,
                                      const SuperharmonicCertificate& cert, std::size_t n_lo,
                                      std::size_t n_hi) {
  TreeHardyInstance inst{reduce_window(t, n_lo, n_hi), {}, {}, 1.0};
  const BoundaryDistance table(t, p, n_hi);
  std::vector<double> h(n_hi - n_lo + 1);
  for (std::size_t n = n_lo; n <= n_hi; ++n) h[n - n_lo] = table.mid(n);
  inst.h = GraphFunction(std::move(h));

  inst.cert.lambda = cert.lambda;
  inst.cert.margin = cert.margin;
  inst.cert.scan_lo = 0;
  inst.cert.scan_hi = n_hi - n_lo;
  inst.cert.target = cert.target + ", window [" + std::to_string(n_lo) + ", " + std::to_string(n_hi) + "]";
  inst.cert.note = cert.note;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    if (!cert.covers(n)) inst.cert.exceptional.push_back(n - n_lo);
  }
  inst.edge_ratio = edge_ratio(t, p, std::max<std::size_t>(n_hi, 64)).certified_sup;
  return inst;
}

HardyReport verify_hardy(const TreeHardyInstance& instance, Exponent p,
                         const std::vector<GraphFunction>& phis, double rel_tol) {
  HardyOptions options;
  options.edge_ratio = instance.edge_ratio;
  options.rel_tol = rel_tol;
  HardyReport report = verify_hardy(instance.window.graph, p, instance.h, instance.cert, phis, options);
  report.note += "; sides carry the factor 1/|S_n_lo| of the window reduction";
  return report;
}

HarrisNorm harris_weight_norm(const SymTree& t, Exponent p, const SymFunction& f,
                              const FunctionTail& tail) {
  if (f.size() == 0) throw std::invalid_argument("f has no spheres");
  const std::size_t horizon = f.horizon();
  const BoundaryDistance table(t, p, horizon + 1);
  const double pp = p.value();
  LogSum weighted, over_h;
  double log_size = 0.0;
  for (std::size_t n = 0; n <= horizon; ++n) {
    if (n > 0) log_size += t.log_branching(n - 1);
    if (f[n] == 0.0) continue;
    const double log_delta = std::log(table.mid(n));
    const double grad = n == 0 ? sym_grad_delta_root(t, p) : sym_grad_delta(t, p, n);
    const double base = log_size + pp * std::log(std::abs(f[n])) + t.log_measure(n);
    weighted.add(base + std::log(grad) - pp * log_delta);
    over_h.add(base - pp * log_delta);
  }
  HarrisNorm out;
  out.log_partial = weighted.log_value();
  out.log_partial_over_h = over_h.log_value();
  out.partial = std::exp(out.log_partial);
  out.partial_over_h = std::exp(out.log_partial_over_h);

  switch (tail.kind) {
    case FunctionTail::Kind::zero:
      out.tail = out.tail_over_h = TailVerdict::certified_finite;
      out.reason = "f vanishes past sphere " + std::to_string(horizon) + ", the sums are exact";
      return out;
    case FunctionTail::Kind::unknown:
      out.reason = "no description of f past sphere " + std::to_string(horizon);
      return out;
    case FunctionTail::Kind::delta_power:
      break;
  }
  if (tail.coefficient == 0.0) {
    out.tail = out.tail_over_h = TailVerdict::certified_finite;
    out.reason = "the tail of f is identically zero";
    return out;
  }
  // Terms past the horizon dominate G(n) = |S_n| m(n) |f(n)|^p delta(n)^(-p) / (k(n)+1)
  // (|grad delta|^p(n) >= 1/(k(n)+1)), resp. equal G(n) (k(n)+1) for the 1/delta weight.
  // Every factor of the bound on G(n+1)/G(n) below is nondecreasing in n, so a
  // ratio bound >= 1 at the first tail sphere makes the series diverge.
  const std::size_t n1 = horizon + 1;
  const RatioBounds r = ratio_bounds(t, n1);
  double log_delta_factor = 0.0;
  if (tail.exponent > 1.0) {
    const double k = edge_ratio(t, p, std::max<std::size_t>(n1, 64)).certified_sup;
    log_delta_factor = -pp * (tail.exponent - 1.0) * std::log(k);
  }
  const double log_ratio = r.log_k + r.log_m + r.log_kk + log_delta_factor;
  const double log_ratio_over_h = r.log_k + r.log_m + log_delta_factor;
  constexpr double kSlack = 1e-12;
  out.tail = log_ratio > kSlack ? TailVerdict::certified_infinite : TailVerdict::undetermined;
  out.tail_over_h = log_ratio_over_h > kSlack ? TailVerdict::certified_infinite : TailVerdict::undetermined;
  out.reason = "term ratio lower bound from sphere " + std::to_string(n1) +
               ": exp(" + std::to_string(log_ratio) + ") for the gradient weight, exp(" +
               std::to_string(log_ratio_over_h) + ") for 1/delta";
  return out;
}

}  // namespace phardy
