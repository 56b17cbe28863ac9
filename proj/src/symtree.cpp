#include "phardy/symtree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "phardy/calculus.hpp"

namespace phardy {

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

boost::multiprecision::cpp_int integer_from_double(double v) {
  using boost::multiprecision::cpp_int;
  if (!std::isfinite(v) || v < 0.0 || v != std::floor(v)) {
    throw std::overflow_error("branching number is not a representable integer");
  }
  if (v < 18446744073709551616.0) return cpp_int(static_cast<std::uint64_t>(v));
  int exponent = 0;
  const double mantissa = std::frexp(v, &exponent);  // v = mantissa * 2^exponent
  const auto bits = static_cast<std::uint64_t>(std::ldexp(mantissa, 53));
  return cpp_int(bits) << (exponent - 53);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

const char* to_string(TreeFamily family) {
  switch (family) {
    case TreeFamily::explicit_list: return "explicit";
    case TreeFamily::polynomial: return "polynomial";
    case TreeFamily::exponential: return "exponential";
  }
  return "unknown";
}

SymTree SymTree::explicit_profile(std::vector<std::uint64_t> k, std::vector<double> m,
                                  ExplicitTail tail) {
  if (k.empty() || m.empty()) throw std::invalid_argument("explicit profiles need at least one k and one m");
  for (std::uint64_t v : k) {
    if (v < 1) throw std::invalid_argument("branching numbers must be >= 1");
  }
  for (double v : m) require_positive(v, "sphere measure");
  SymTree t;
  t.family_ = TreeFamily::explicit_list;
  t.tail_ = tail;
  t.k_list_ = std::move(k);
  t.m_list_ = std::move(m);
  return t;
}

SymTree SymTree::polynomial(double gamma, double c_k, double eta, double c_m) {
  if (!(gamma > 0.0) || !(eta < 0.0)) {
    throw std::invalid_argument("polynomial family needs gamma > 0 > eta");
  }
  require_positive(c_k, "c_k");
  require_positive(c_m, "c_m");
  SymTree t;
  t.family_ = TreeFamily::polynomial;
  t.gamma_ = gamma;
  t.eta_ = eta;
  t.c_k_ = c_k;
  t.c_m_ = c_m;
  return t;
}

SymTree SymTree::exponential(double gamma, double c_k, double eta, double c_m) {
  if (!(gamma > 1.0) || !(eta <= 1.0) || !(eta > 0.0)) {
    throw std::invalid_argument("exponential family needs gamma > 1 >= eta > 0");
  }
  require_positive(c_k, "c_k");
  require_positive(c_m, "c_m");
  SymTree t;
  t.family_ = TreeFamily::exponential;
  t.gamma_ = gamma;
  t.eta_ = eta;
  t.c_k_ = c_k;
  t.c_m_ = c_m;
  return t;
}

std::size_t SymTree::branching_limit() const {
  if (family_ == TreeFamily::explicit_list && tail_ == ExplicitTail::none) return k_list_.size();
  return kUnbounded;
}

std::size_t SymTree::measure_limit() const {
  if (family_ == TreeFamily::explicit_list && tail_ == ExplicitTail::none) return m_list_.size();
  return kUnbounded;
}

double SymTree::branching(std::size_t n) const {
  const double dn = static_cast<double>(n);
  switch (family_) {
    case TreeFamily::explicit_list:
      if (n >= branching_limit()) {
        throw std::out_of_range("branching number k(" + std::to_string(n) + ") is not known");
      }
      return static_cast<double>(k_list_[std::min(n, k_list_.size() - 1)]);
    case TreeFamily::polynomial:
      return std::ceil(c_k_ * std::pow(dn + 1.0, gamma_));
    case TreeFamily::exponential:
      return std::ceil(c_k_ * std::pow(gamma_, dn));
  }
  return 0.0;
}

double SymTree::log_branching(std::size_t n) const {
  const double k = branching(n);
  if (std::isfinite(k)) return std::log(k);
  const double dn = static_cast<double>(n);
  if (family_ == TreeFamily::polynomial) return std::log(c_k_) + gamma_ * std::log(dn + 1.0);
  return std::log(c_k_) + dn * std::log(gamma_);
}

double SymTree::measure(std::size_t n) const {
  const double dn = static_cast<double>(n);
  switch (family_) {
    case TreeFamily::explicit_list:
      if (n >= measure_limit()) {
        throw std::out_of_range("sphere measure m(" + std::to_string(n) + ") is not known");
      }
      return m_list_[std::min(n, m_list_.size() - 1)];
    case TreeFamily::polynomial:
      return c_m_ * std::pow(dn + 1.0, eta_);
    case TreeFamily::exponential:
      return c_m_ * std::pow(eta_, dn);
  }
  return 0.0;
}

double SymTree::log_measure(std::size_t n) const {
  const double dn = static_cast<double>(n);
  switch (family_) {
    case TreeFamily::explicit_list: return std::log(measure(n));
    case TreeFamily::polynomial: return std::log(c_m_) + eta_ * std::log(dn + 1.0);
    case TreeFamily::exponential: return std::log(c_m_) + dn * std::log(eta_);
  }
  return 0.0;
}

double SymTree::degree(std::size_t n) const { return branching(n) + (n >= 1 ? 1.0 : 0.0); }

double SymTree::log_degree(std::size_t n) const {
  const double lk = log_branching(n);
  return n == 0 ? lk : lk + std::log1p(std::exp(-lk));
}

bool SymTree::monotone_profile() const {
  if (family_ != TreeFamily::explicit_list) return true;
  return std::is_sorted(k_list_.begin(), k_list_.end()) &&
         std::is_sorted(m_list_.begin(), m_list_.end(), std::greater<>());
}

SymFunction::SymFunction(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("sphere function entries must be finite");
  }
}

boost::multiprecision::cpp_int sphere_size(const SymTree& t, std::size_t n) {
  boost::multiprecision::cpp_int size = 1;
  for (std::size_t j = 0; j < n; ++j) size *= integer_from_double(t.branching(j));
  return size;
}

double log_sphere_size(const SymTree& t, std::size_t n) {
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += t.log_branching(j);
  return sum;
}

double log_alpha(const SymTree& t, Exponent p, std::size_t n) {
  const double inner = t.log_measure(n) - t.log_degree(n);
  const double outer = t.log_measure(n + 1) - t.log_degree(n + 1);
  return std::min(inner, outer) / p.value();
}

double alpha(const SymTree& t, Exponent p, std::size_t n) {
  const double m0 = t.measure(n), m1 = t.measure(n + 1);
  const double d0 = t.degree(n), d1 = t.degree(n + 1);
  if (std::isnormal(m0) && std::isnormal(m1) && std::isfinite(d0) && std::isfinite(d1)) {
    const double r = std::min(m0 / d0, m1 / d1);
    if (std::isnormal(r)) return std::pow(r, 1.0 / p.value());
  }
  return std::exp(log_alpha(t, p, n));
}

double sym_laplacian(const SymTree& t, Exponent p, const SymFunction& f, std::size_t n) {
  if (n + 1 >= f.size()) {
    throw std::out_of_range("sym_laplacian needs f(n+1); n = " + std::to_string(n));
  }
  const double q = p.value() - 1.0;
  double sum = t.branching(n) * signed_power(f[n] - f[n + 1], q);
  if (n >= 1) sum += signed_power(f[n] - f[n - 1], q);
  return sum / t.measure(n);
}

double sym_grad_norm_pow(const SymTree& t, Exponent p, const SymFunction& f, std::size_t n) {
  if (n + 1 >= f.size()) {
    throw std::out_of_range("sym_grad_norm_pow needs f(n+1); n = " + std::to_string(n));
  }
  const double pp = p.value();
  double sum = t.branching(n) * std::pow(std::abs(f[n] - f[n + 1]), pp);
  if (n >= 1) sum += std::pow(std::abs(f[n] - f[n - 1]), pp);
  return sum / t.measure(n);
}

namespace {

// The closed forms need alpha(n-1), alpha(n) to be attained on the outer side.
void require_outer_minimum(const SymTree& t, std::size_t n) {
  for (std::size_t j : {n - 1, n}) {
    const double inner = t.log_measure(j) - t.log_degree(j);
    const double outer = t.log_measure(j + 1) - t.log_degree(j + 1);
    if (outer > inner + 1e-14 * std::max(1.0, std::abs(inner))) {
      throw std::domain_error("closed form for delta needs a monotone profile around sphere " +
                              std::to_string(n));
    }
  }
}

}  // namespace

double sym_grad_delta(const SymTree& t, Exponent p, std::size_t n) {
  (void)p;  // the closed form is independent of p
  if (n == 0) throw std::domain_error("sym_grad_delta is defined for n >= 1; use sym_grad_delta_root");
  require_outer_minimum(t, n);
  const double k0 = t.branching(n), k1 = t.branching(n + 1);
  const double m0 = t.measure(n), m1 = t.measure(n + 1);
  if (std::isfinite(k1) && std::isnormal(m0) && std::isnormal(m1)) {
    return k0 * m1 / (m0 * (k1 + 1.0)) + 1.0 / (k0 + 1.0);
  }
  return std::exp(t.log_branching(n) + t.log_measure(n + 1) - t.log_measure(n) -
                  t.log_degree(n + 1)) +
         std::exp(-t.log_degree(n));
}

double sym_grad_delta_root(const SymTree& t, Exponent p) {
  return t.branching(0) * std::pow(alpha(t, p, 0), p.value()) / t.measure(0);
}

double sym_laplacian_delta(const SymTree& t, Exponent p, std::size_t n) {
  if (n == 0) {
    throw std::domain_error("sym_laplacian_delta is defined for n >= 1; use sym_laplacian_delta_root");
  }
  const double q = p.value() - 1.0;
  const double a = t.log_branching(n) + q * log_alpha(t, p, n) - t.log_measure(n);
  const double b = q * log_alpha(t, p, n - 1) - t.log_measure(n);
  if (std::max(a, b) < 700.0 && std::isfinite(t.branching(n)) && std::isnormal(t.measure(n))) {
    return (t.branching(n) * std::pow(alpha(t, p, n), q) - std::pow(alpha(t, p, n - 1), q)) /
           t.measure(n);
  }
  if (std::max(a, b) < 700.0) return std::exp(a) - std::exp(b);
  if (a == b) return 0.0;
  return a > b ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

double sym_laplacian_delta_root(const SymTree& t, Exponent p) {
  return t.branching(0) * std::pow(alpha(t, p, 0), p.value() - 1.0) / t.measure(0);
}

namespace {

// Calls fn(n, |S_n|) for n = 0..last with |S_n| as a double, falling back to
// exp(log|S_n|) once the direct product overflows.
template <class Fn>
void for_each_sphere(const SymTree& t, std::size_t last, Fn&& fn) {
  double size = 1.0;
  double log_size = 0.0;
  for (std::size_t n = 0; n <= last; ++n) {
    fn(n, std::isfinite(size) ? size : std::exp(log_size));
    if (n == last) break;
    size *= t.branching(n);
    log_size += t.log_branching(n);
  }
}

}  // namespace

double a_norm(const SymTree& t, Exponent p, const SymFunction& f, std::size_t horizon) {
  if (horizon >= f.size()) throw std::out_of_range("a_norm horizon exceeds the function's spheres");
  double sum = 0.0;
  for_each_sphere(t, horizon, [&](std::size_t n, double size) {
    if (f[n] != 0.0) sum += size * std::pow(std::abs(f[n]), p.value()) * t.measure(n);
  });
  return sum;
}

double sym_energy(const SymTree& t, Exponent p, const SymFunction& f, std::size_t horizon) {
  if (horizon >= f.size()) throw std::out_of_range("sym_energy horizon exceeds the function's spheres");
  if (horizon == 0) return 0.0;
  double sum = 0.0;
  for_each_sphere(t, horizon - 1, [&](std::size_t n, double size) {
    const double d = f[n + 1] - f[n];
    if (d != 0.0) sum += size * t.branching(n) * std::pow(std::abs(d), p.value());
  });
  return 2.0 * sum / p.value();
}

MaterializedTree materialize(const SymTree& t, std::size_t depth, std::size_t cap) {
  MaterializedTree out;
  out.depth = depth;
  out.sphere_offset.push_back(0);
  std::size_t size = 1;
  std::size_t total = 0;
  for (std::size_t n = 0; n <= depth; ++n) {
    total += size;
    if (total > cap) {
      throw std::length_error("materializing depth " + std::to_string(depth) +
                              " exceeds the vertex cap of " + std::to_string(cap));
    }
    out.sphere_offset.push_back(total);
    if (n == depth) break;
    const double k = t.branching(n);
    if (!(k <= static_cast<double>(cap))) {
      throw std::length_error("materializing depth " + std::to_string(depth) +
                              " exceeds the vertex cap of " + std::to_string(cap));
    }
    const auto kn = static_cast<std::size_t>(k);
    if (size > cap / kn) {
      throw std::length_error("materializing depth " + std::to_string(depth) +
                              " exceeds the vertex cap of " + std::to_string(cap));
    }
    size *= kn;
  }

  std::vector<double> measure(total);
  std::vector<bool> interior(total);
  std::vector<Edge> edges;
  edges.reserve(total - 1);
  out.sphere_of.resize(total);
  for (std::size_t n = 0; n <= depth; ++n) {
    const double mn = t.measure(n);
    for (std::size_t v = out.sphere_offset[n]; v < out.sphere_offset[n + 1]; ++v) {
      measure[v] = mn;
      interior[v] = n < depth;
      out.sphere_of[v] = n;
    }
    if (n == depth) continue;
    const auto kn = static_cast<std::size_t>(t.branching(n));
    for (std::size_t i = 0; i < out.sphere_offset[n + 1] - out.sphere_offset[n]; ++i) {
      for (std::size_t c = 0; c < kn; ++c) {
        edges.push_back({out.sphere_offset[n] + i, out.sphere_offset[n + 1] + i * kn + c, 1.0});
      }
    }
  }
  out.graph = WeightedGraph(total, std::move(measure), edges, std::move(interior));
  return out;
}

GraphFunction lift(const MaterializedTree& tree, const SymFunction& f) {
  if (f.size() <= tree.depth) throw std::invalid_argument("sphere function shorter than the tree depth");
  std::vector<double> values(tree.sphere_of.size());
  for (std::size_t v = 0; v < values.size(); ++v) values[v] = f[tree.sphere_of[v]];
  return GraphFunction(std::move(values));
}

double fit_exponent(std::span<const double> seq, std::size_t n1, std::size_t n2) {
  if (n1 < 1 || n2 <= n1 + 1) throw std::invalid_argument("fit_exponent needs 1 <= n1 and n2 > n1 + 1");
  if (n2 >= seq.size()) throw std::out_of_range("fit_exponent range exceeds the sequence");
  double sx = 0.0, sy = 0.0;
  const double count = static_cast<double>(n2 - n1 + 1);
  for (std::size_t n = n1; n <= n2; ++n) {
    if (!(seq[n] > 0.0)) {
      throw std::invalid_argument("fit_exponent needs positive entries (index " + std::to_string(n) + ")");
    }
    sx += std::log(static_cast<double>(n));
    sy += std::log(seq[n]);
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t n = n1; n <= n2; ++n) {
    const double dx = std::log(static_cast<double>(n)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(seq[n]) - my);
  }
  return sxy / sxx;
}

VertexId TreeWindow::vertex(std::size_t n) const {
  if (n < first_sphere || n > last_sphere()) {
    throw std::out_of_range("sphere " + std::to_string(n) + " outside the window");
  }
  return n - first_sphere;
}

TreeWindow reduce_window(const SymTree& t, std::size_t n_lo, std::size_t n_hi) {
  if (n_hi <= n_lo) throw std::invalid_argument("window needs n_hi > n_lo");
  const std::size_t count = n_hi - n_lo + 1;
  std::vector<double> measure(count);
  std::vector<bool> interior(count, true);
  std::vector<Edge> edges;
  double rel = 1.0;  // |S_n| / |S_{n_lo}|
  double log_rel = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = n_lo + i;
    const double mn = t.measure(n);
    double mu = rel * mn;
    if (!std::isnormal(mu)) mu = std::exp(log_rel + t.log_measure(n));
    if (!std::isnormal(mu)) {
      throw std::overflow_error("window measure leaves the double range at sphere " + std::to_string(n));
    }
    measure[i] = mu;
    if (i + 1 == count) break;
    rel *= t.branching(n);
    log_rel += t.log_branching(n);
    if (!std::isfinite(rel)) {
      throw std::overflow_error("relative sphere size overflows at sphere " + std::to_string(n + 1) +
                                "; shorten the window");
    }
    edges.push_back({i, i + 1, rel});
  }
  interior.front() = (n_lo == 0);
  interior.back() = false;
  TreeWindow w;
  w.graph = WeightedGraph(count, std::move(measure), edges, std::move(interior));
  w.first_sphere = n_lo;
  w.log_scale = log_sphere_size(t, n_lo);
  return w;
}

}  // namespace phardy
