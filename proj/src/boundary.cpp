#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "phardy/symtree.hpp"

namespace phardy {

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::empty: return "empty";
    case BoundaryKind::nonempty: return "nonempty";
    case BoundaryKind::undetermined: return "undetermined";
  }
  return "unknown";
}

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;
// Outward widening applied to closed-form tail bounds.
constexpr double kOutward = 1e-14;

BoundaryClassification classify_without_cutoff(const SymTree& t, Exponent p) {
  BoundaryClassification c;
  const double pp = p.value();
  switch (t.family()) {
    case TreeFamily::polynomial: {
      const double s = (t.gamma() - t.eta()) / pp;
      c.decay = s;
      if (s > 1.0) {
        c.kind = BoundaryKind::nonempty;
        c.reason = "alpha(n) ~ n^(-" + std::to_string(s) + ") is summable (gamma > eta + p)";
      } else {
        c.kind = BoundaryKind::empty;
        c.reason = "alpha(n) ~ n^(-" + std::to_string(s) + ") is not summable (gamma <= eta + p)";
      }
      break;
    }
    case TreeFamily::exponential: {
      const double xi = std::pow(t.eta() / t.gamma(), 1.0 / pp);
      c.decay = xi;
      c.kind = BoundaryKind::nonempty;
      c.reason = "alpha(n) ~ xi^n with xi = (eta/gamma)^(1/p) = " + std::to_string(xi) + " < 1";
      break;
    }
    case TreeFamily::explicit_list:
      if (t.explicit_tail() == ExplicitTail::constant) {
        // Past the listed entries k and m are constant, so alpha is eventually
        // a positive constant; its ratio test sits at 1 with a non-vanishing term.
        const std::size_t last = std::max(t.listed_branching().size(), t.listed_measure().size());
        c.kind = BoundaryKind::empty;
        c.decay = alpha(t, p, last);
        c.reason = "alpha is constant (" + std::to_string(c.decay) + ") from sphere " +
                   std::to_string(last) + " on and hence not summable";
      } else {
        c.kind = BoundaryKind::undetermined;
        c.reason = "explicit profile without a tail description; summability cannot be certified";
      }
      break;
  }
  return c;
}

// Compensated (Neumaier) accumulation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

TailBound alpha_tail_bound(const SymTree& t, Exponent p, std::size_t h) {
  const double pp = p.value();
  const double log_c = (std::log(t.c_m()) - std::log(t.c_k())) / pp;
  TailBound b;
  b.n0 = h + 1;
  if (t.family() == TreeFamily::exponential) {
    const double log_xi = (std::log(t.eta()) - std::log(t.gamma())) / pp;
    const double xi = std::exp(log_xi);
    const double hn = static_cast<double>(h);
    const double log_upper = log_c + (hn + 2.0) * log_xi - std::log1p(-xi);
    const double eps = std::exp(std::log(2.0) - std::log(t.c_k()) - (hn + 2.0) * std::log(t.gamma()));
    b.upper = std::exp(log_upper) * (1.0 + kOutward);
    b.lower = std::exp(log_upper - std::log1p(eps) / pp) * (1.0 - kOutward);
    return b;
  }
  if (t.family() == TreeFamily::polynomial) {
    const double s = (t.gamma() - t.eta()) / pp;
    if (!(s > 1.0)) throw std::domain_error("alpha is not summable for this polynomial tree");
    const double a = static_cast<double>(h) + 3.0;  // alpha(j) ~ (j+2)^(-s), j > h
    const double upper_sum = std::pow(a - 0.5, 1.0 - s) / (s - 1.0);
    const double lower_sum = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    const double eps = 2.0 / (t.c_k() * std::pow(a, t.gamma()));
    b.upper = std::exp(log_c) * upper_sum * (1.0 + kOutward);
    b.lower = std::exp(log_c - std::log1p(eps) / pp) * lower_sum * (1.0 - kOutward);
    return b;
  }
  throw std::domain_error("tail bounds are only available for the named families");
}

BoundaryClassification boundary_classification(const SymTree& t, Exponent p) {
  BoundaryClassification c = classify_without_cutoff(t, p);
  if (c.kind == BoundaryKind::nonempty) {
    const BoundaryDistance table(t, p, 1);
    const Interval d = table.at(1);
    c.cutoff = TailBound{1, d.lo, d.hi};
  }
  return c;
}

BoundaryDistance::BoundaryDistance(const SymTree& t, Exponent p, std::size_t n_max,
                                   BoundaryDistanceOptions options) {
  const BoundaryClassification c = classify_without_cutoff(t, p);
  if (c.kind != BoundaryKind::nonempty) {
    throw std::domain_error("distance to the boundary needs a nonempty boundary: " + c.reason);
  }
  std::size_t h = std::max<std::size_t>(n_max + 64, 128);
  if (h > options.max_terms) h = std::max(options.max_terms, n_max + 1);
  for (;;) {
    while (alpha_.size() <= h) alpha_.push_back(phardy::alpha(t, p, alpha_.size()));
    tail_ = alpha_tail_bound(t, p, h);
    CompensatedSum partial;
    for (std::size_t j = h + 1; j-- > n_max;) partial.add(alpha_[j]);
    const double total = partial.value() + tail_.lower;
    const double width = tail_.upper - tail_.lower + 8.0 * kUnitRoundoff * total;
    if (width <= options.relative_width * total || h >= options.max_terms) break;
    h = std::min(2 * h, std::max(options.max_terms, n_max + 1));
  }
  horizon_ = h;
  alpha_.resize(h + 1);

  suffix_.assign(n_max + 2, 0.0);
  error_.assign(n_max + 2, 0.0);
  CompensatedSum running;
  for (std::size_t j = h + 1; j-- > 0;) {
    running.add(alpha_[j]);
    if (j <= n_max + 1) {
      suffix_[j] = running.value();
      error_[j] = 8.0 * kUnitRoundoff * (suffix_[j] + tail_.upper);
    }
  }
}

Interval BoundaryDistance::at(std::size_t n) const {
  if (n > n_max() + 1) throw std::out_of_range("delta(" + std::to_string(n) + ") beyond the table");
  return {suffix_[n] + tail_.lower - error_[n], suffix_[n] + tail_.upper + error_[n]};
}

Interval BoundaryDistance::capped(std::size_t n) const { return n == 0 ? at(1) : at(n); }

std::vector<double> BoundaryDistance::midpoints() const {
  std::vector<double> out(n_max() + 1);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = mid(n);
  return out;
}

Interval delta(const SymTree& t, Exponent p, std::size_t n) {
  return BoundaryDistance(t, p, n).at(n);
}

}  // namespace phardy
