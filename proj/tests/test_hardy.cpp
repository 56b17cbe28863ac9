#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "phardy/calculus.hpp"
#include "phardy/generators.hpp"
#include "phardy/hardy.hpp"
#include "phardy/tree_hardy.hpp"
#include "support.hpp"

using namespace phardy;
using testing::close;
using testing::path_graph;

namespace {

struct Instance {
  WeightedGraph g;
  GraphFunction h;
  Exponent p;
};

Instance random_instance(Rng& rng, bool exterior = false) {
  RandomGraphOptions o;
  o.vertices = 3 + rng.index(18);
  o.extra_edges = rng.index(12);
  o.leaves_exterior = exterior;
  WeightedGraph g = random_graph(rng, o);
  GraphFunction h = random_function(rng, g.num_vertices(), 0.05, 3.0);
  const Exponent p(testing::sweep_exponents()[rng.index(6)]);
  return {std::move(g), std::move(h), p};
}

std::vector<double> mapped(const GraphFunction& h, const ConcaveMap& phi) {
  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = phi.value(h[i]);
  return out;
}

}  // namespace

TEST_CASE("comp identity") {
  Rng root(101);
  for (int s = 0; s < 300; ++s) {
    Rng rng = root.split(s);
    const Instance in = random_instance(rng);
    const testing::Dense d(in.g);
    const double pp = in.p.value();
    for (VertexId x = 0; x < in.g.num_vertices(); ++x) {
      const CompIdentity c = comp_identity(in.g, in.p, in.h, x);
      CHECK(std::abs(c.lhs - c.rhs) <= 1e-10 * (1.0 + std::abs(c.lhs)));
      // lhs from the dense reference
      const double lhs = 2.0 * in.h[x] * d.laplacian(pp, testing::values(in.h), x);
      CHECK(close(c.lhs, lhs, 1e-10, 1e-12));
    }
  }
  SUBCASE("rejections") {
    const WeightedGraph g = path_graph(3, 1.0, 1.0, {false, true, false});
    CHECK_THROWS_AS(comp_identity(g, Exponent(2), GraphFunction(std::vector<double>{1, 0, 1}), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(comp_identity(g, Exponent(2), GraphFunction(3, 1.0), 0), std::invalid_argument);
  }
}

TEST_CASE("main estimate") {
  Rng root(202);
  for (int s = 0; s < 300; ++s) {
    Rng rng = root.split(s);
    const Instance in = random_instance(rng);
    for (VertexId x = 0; x < in.g.num_vertices(); ++x) {
      const Margin m = main_estimate_gap(in.g, in.p, in.h, x);
      if (in.p.value() >= 2.0) {
        CHECK(m.holds());
      } else {
        // the mean value step runs the other way for p < 2
        CHECK(m.rhs - m.lhs >= -1e-10 * m.scale());
      }
    }
  }
  SUBCASE("fails below p = 2") {
    const Margin m = main_estimate_gap(path_graph(3), Exponent(1.5), GraphFunction(std::vector<double>{4, 1, 4}), 1);
    CHECK(m.lhs == doctest::Approx(-4.0));
    CHECK(m.rhs == doctest::Approx(2.0 - 6.0 / std::sqrt(3.0) * std::sqrt(2.0)));
    CHECK_FALSE(m.holds());
  }
  SUBCASE("equality for a constant") {
    const Margin m = main_estimate_gap(path_graph(3), Exponent(3), GraphFunction(3, 2.0), 1);
    CHECK(m.lhs == 0.0);
    CHECK(m.rhs == 0.0);
  }
  SUBCASE("worked example at p = 2") {
    // h = (1,4,1): 2*2*((2-1)+(2-1)) = 8 >= (1+1) + (3+3)
    const Margin m = main_estimate_gap(path_graph(3), Exponent(2), GraphFunction(std::vector<double>{1, 4, 1}), 1);
    CHECK(m.lhs == doctest::Approx(8.0));
    CHECK(m.rhs == doctest::Approx(8.0));
  }
}

TEST_CASE("chain rule readings") {
  const std::vector<ConcaveMap> maps = {ConcaveMap::identity(), ConcaveMap::sqrt(), ConcaveMap::power(0.3),
                                        ConcaveMap::log1p()};
  SUBCASE("literal reading fails on (1,4,1)") {
    const WeightedGraph g = path_graph(3);
    const GraphFunction h(std::vector<double>{1, 4, 1});
    const Margin lit = chain_lower_bound_gap(g, Exponent(2), h, ConcaveMap::sqrt(), 1, ChainReading::literal_min);
    CHECK(lit.lhs == doctest::Approx(2.0));
    CHECK(lit.rhs == doctest::Approx(4.5));
    CHECK_FALSE(lit.holds());
    const Margin inf = chain_lower_bound_gap(g, Exponent(2), h, ConcaveMap::sqrt(), 1);
    CHECK(inf.rhs == doctest::Approx(1.125));
    CHECK(inf.holds());
  }
  SUBCASE("brute force over random instances") {
    Rng root(303);
    std::size_t literal_failures = 0;
    for (int s = 0; s < 300; ++s) {
      Rng rng = root.split(s);
      const Instance in = random_instance(rng);
      const testing::Dense d(in.g);
      const double pp = in.p.value();
      for (const ConcaveMap& phi : maps) {
        const std::vector<double> ph = mapped(in.h, phi);
        for (VertexId x = 0; x < in.g.num_vertices(); ++x) {
          const double lhs = d.grad_pow(pp, ph, x);
          double inf_d = 1e300, per = 0.0;
          for (VertexId y = 0; y < d.n; ++y) {
            if (d.w(x, y) == 0.0) continue;
            const double dv = std::pow(phi.derivative(std::max(in.h[x], in.h[y])), pp);
            inf_d = std::min(inf_d, dv);
            per += d.w(x, y) * dv * std::pow(std::abs(in.h[x] - in.h[y]), pp);
          }
          const double inf_rhs = inf_d * d.grad_pow(pp, testing::values(in.h), x);
          per /= in.g.measure(x);

          const Margin a = chain_lower_bound_gap(in.g, in.p, in.h, phi, x);
          const Margin b = chain_lower_bound_gap(in.g, in.p, in.h, phi, x, ChainReading::per_neighbor);
          CHECK(close(a.lhs, lhs, 1e-10, 1e-12));
          CHECK(close(a.rhs, inf_rhs, 1e-10, 1e-12));
          CHECK(close(b.rhs, per, 1e-10, 1e-12));
          CHECK(a.holds());
          CHECK(b.holds());
          CHECK(b.rhs >= a.rhs * (1 - 1e-12));
          if (!chain_lower_bound_gap(in.g, in.p, in.h, phi, x, ChainReading::literal_min).holds()) ++literal_failures;
        }
      }
    }
    CHECK(literal_failures > 0);
  }
  SUBCASE("maps") {
    CHECK_THROWS(ConcaveMap::power(1.5));
    CHECK_THROWS(ConcaveMap::power(0.0));
    CHECK(ConcaveMap::log1p().derivative(1.0) == 0.5);
    CHECK_THROWS_AS(chain_lower_bound_gap(path_graph(3), Exponent(2), GraphFunction(std::vector<double>{0, 1, 1}),
                                          ConcaveMap::sqrt(), 1),
                    std::invalid_argument);
  }
}

TEST_CASE("picone") {
  Rng root(404);
  for (int s = 0; s < 400; ++s) {
    Rng rng = root.split(s);
    const Instance in = random_instance(rng, rng.bernoulli(0.5));
    if (in.g.num_interior() == 0) continue;
    const GraphFunction phi = random_test_function(rng, in.g);
    const Margin m = picone_check(in.g, in.p, in.h, phi);
    CHECK(m.holds());
    CHECK(close(m.lhs, energy(in.g, in.p, phi)));
  }
  SUBCASE("equality for phi = h on a closed cycle") {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5, 1.0 + i});
    const WeightedGraph g(5, {1, 2, 1, 3, 1}, e);
    const GraphFunction h(std::vector<double>{1, 2, 0.5, 3, 1.5});
    for (double p : testing::sweep_exponents()) {
      const Margin m = picone_check(g, Exponent(p), h, h);
      CHECK(m.value() == doctest::Approx(0.0).epsilon(1e-12).scale(m.scale()));
    }
  }
  SUBCASE("rejections") {
    const WeightedGraph g = path_graph(3, 1.0, 1.0, {false, true, false});
    CHECK_THROWS_AS(picone_check(g, Exponent(2), GraphFunction(3, 1.0), GraphFunction(std::vector<double>{1, 1, 0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(picone_check(g, Exponent(2), GraphFunction(std::vector<double>{0, 1, 1}),
                                 GraphFunction(std::vector<double>{0, 1, 0})),
                    std::invalid_argument);
  }
}

TEST_CASE("graph certificates and Hardy inequalities") {
  SUBCASE("path with exterior ends") {
    // h linear on a path: L h = 0 inside
    const WeightedGraph g = path_graph(6, 1.0, 1.0, {false, true, true, true, true, false});
    const GraphFunction h(std::vector<double>{6, 5, 4, 3, 2, 1});
    const auto cert = superharmonic_certificate(g, Exponent(2), h);
    REQUIRE(cert);
    CHECK(cert->lambda == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cert->exceptional == std::vector<std::size_t>{0, 5});
    CHECK(cert->covers(2));
    CHECK_FALSE(cert->covers(0));
    CHECK(edge_ratio(g, h) == 2.0);
    CHECK_FALSE(superharmonic_certificate(g, Exponent(2), h, {{}, 0.5}));
    const auto with_k = superharmonic_certificate(g, Exponent(2), h, {{2}, std::nullopt});
    REQUIRE(with_k);
    CHECK_FALSE(with_k->covers(2));
  }
  SUBCASE("random graphs with the minimal lambda") {
    Rng root(505);
    for (int s = 0; s < 200; ++s) {
      Rng rng = root.split(s);
      const Instance in = random_instance(rng, true);
      if (in.g.num_interior() == 0) continue;
      const auto cert = superharmonic_certificate(in.g, in.p, in.h);
      REQUIRE(cert);
      CHECK(cert->valid());
      std::vector<GraphFunction> phis;
      for (int i = 0; i < 5; ++i) phis.push_back(random_test_function(rng, in.g));
      const HardyReport r = verify_hardy(in.g, in.p, in.h, *cert, phis);
      CHECK(r.verdict);
      CHECK(r.c1 == doctest::Approx(1.0 / in.p.value()));
      CHECK(r.c3 == doctest::Approx(1.0 / (in.p.value() * std::pow(2.0, in.p.value()) *
                                           std::pow(r.edge_ratio, in.p.value() / 2.0))));
      CHECK(r.first.size() == 5);
    }
  }
  SUBCASE("uncovered support throws") {
    const WeightedGraph g = path_graph(4, 1.0, 1.0, {false, true, true, false});
    const GraphFunction h(std::vector<double>{3, 2, 2, 1});
    const auto cert = superharmonic_certificate(g, Exponent(2), h, {{1}, std::nullopt});
    REQUIRE(cert);
    CHECK_THROWS_AS(verify_hardy(g, Exponent(2), h, *cert, {GraphFunction(std::vector<double>{0, 1, 0, 0})}),
                    std::invalid_argument);
    CHECK_NOTHROW(verify_hardy(g, Exponent(2), h, *cert, {GraphFunction(std::vector<double>{0, 0, 1, 0})}));
  }
  SUBCASE("weights") {
    const HardyWeights w = hardy_weights(path_graph(3), Exponent(2), GraphFunction(std::vector<double>{1, 4, 1}), 1);
    CHECK(w.w_half == doctest::Approx(0.5));
    CHECK(w.w_full == doctest::Approx(18.0 / 16.0));
  }
}

TEST_CASE("graph harris norm") {
  const WeightedGraph g = path_graph(4, 1.0, 1.0, {false, true, true, false});
  const GraphFunction h(std::vector<double>{4, 3, 2, 1});
  const HarrisNorm n = harris_weight_norm(g, Exponent(2), h, GraphFunction(std::vector<double>{0, 1, 1, 0}));
  CHECK(n.partial == doctest::Approx(2.0 / 9.0 + 2.0 / 4.0));
  CHECK(n.partial_over_h == doctest::Approx(1.0 / 9.0 + 1.0 / 4.0));
  CHECK(n.tail == TailVerdict::certified_finite);
  const HarrisNorm u = harris_weight_norm(g, Exponent(2), h, GraphFunction(std::vector<double>{1, 1, 1, 0}));
  CHECK(u.tail == TailVerdict::undetermined);
}

TEST_CASE("tree certificates") {
  const SymTree poly = SymTree::polynomial(4.0, 1.0, -1.0, 1.0);
  const SymTree expo = SymTree::exponential(4.0, 1.0, 0.5, 1.0);
  const Exponent p(2);
  for (const SymTree* t : {&poly, &expo}) {
    const auto scan = superharmonic_certificate(*t, p, 500);
    REQUIRE(scan);
    CHECK(scan->stable);
    CHECK(scan->cert.tail_certified);
    CHECK(scan->tail_log_bound > 0.0);
    // sign of k(n) alpha(n)^(p-1) - alpha(n-1)^(p-1), from logarithms
    std::size_t n0 = 0;
    for (std::size_t n = 1; n <= 500; ++n) {
      if (t->log_branching(n) + log_alpha(*t, p, n) - log_alpha(*t, p, n - 1) < 0.0) n0 = n + 1;
    }
    CHECK(scan->n0 == n0);
    CHECK(scan->cert.exceptional.size() == n0);
    for (std::size_t n = std::max<std::size_t>(n0, 1); n <= 500; ++n) CHECK(sym_laplacian_delta(*t, p, n) >= 0.0);
  }
  CHECK_THROWS_AS(superharmonic_certificate(SymTree::explicit_profile({2}, {1.0}), p), std::domain_error);
  SUBCASE("a positive lambda enlarges K") {
    const auto base = superharmonic_certificate(poly, p, 200);
    const auto big = superharmonic_certificate(poly, p, 200, 1e3);
    REQUIRE(big);
    CHECK(big->n0 > base->n0);
    CHECK(big->cert.lambda == 1e3);
    CHECK_FALSE(big->cert.tail_certified);
  }
}

TEST_CASE("tree edge ratio") {
  const Exponent p(2);
  const SymTree expo = SymTree::exponential(4.0, 1.0, 0.5, 1.0);
  const TreeEdgeRatio r = edge_ratio(expo, p, 80);
  for (double v : r.ratios) CHECK(v <= r.certified_sup);
  CHECK(r.ratios[60] == doctest::Approx(std::sqrt(8.0)).epsilon(1e-9));
  CHECK(r.certified_sup >= std::sqrt(8.0) - 1e-12);
  CHECK(r.certified_sup <= std::sqrt(8.0) * (1 + 1e-9));

  const SymTree poly = SymTree::polynomial(4.0, 1.0, -1.0, 1.0);
  const TreeEdgeRatio q = edge_ratio(poly, p, 200);
  CHECK(q.certified_sup >= q.scanned_max);
  CHECK(q.certified_sup < 10.0);
  // ratios delta(n)/delta(n+1) tend to 1 for polynomial growth
  CHECK(q.ratios[200] < 1.01);
}

TEST_CASE("tree Hardy windows") {
  const Exponent p(2);
  Rng root(606);
  for (const SymTree& t : {SymTree::polynomial(4.0, 1.0, -1.0, 1.0), SymTree::exponential(4.0, 1.0, 0.5, 1.0)}) {
    const auto scan = superharmonic_certificate(t, p, 500);
    REQUIRE(scan);
    const std::size_t lo = scan->n0 == 0 ? 0 : scan->n0 - 1;
    const TreeHardyInstance inst = tree_hardy_instance(t, p, scan->cert, lo, lo + 21);
    std::vector<GraphFunction> phis;
    for (int i = 0; i < 30; ++i) {
      Rng rng = root.split(i);
      phis.push_back(random_window_function(rng, inst.window.graph.num_vertices(), 1, 20));
    }
    const HardyReport r = verify_hardy(inst, p, phis);
    CHECK(r.verdict);
    CHECK(r.c2 == 0.0);
    CHECK(r.edge_ratio == doctest::Approx(edge_ratio(t, p, 64).certified_sup));
  }
}

TEST_CASE("tree harris norm") {
  const Exponent p(2);
  const SymTree poly = SymTree::polynomial(4.0, 1.0, -1.0, 1.0);
  std::vector<double> v(30, 0.0);
  v[3] = 1.0;
  const HarrisNorm finite = harris_weight_norm(poly, p, SymFunction(v), {});
  CHECK(finite.tail == TailVerdict::certified_finite);
  CHECK(std::isfinite(finite.log_partial));

  const BoundaryDistance d(poly, p, 40);
  std::vector<double> dv = d.midpoints();
  dv.resize(30);
  for (double a : {0.5, 1.0, 2.0}) {
    const HarrisNorm inf = harris_weight_norm(poly, p, SymFunction(dv), {FunctionTail::Kind::delta_power, 1.0, a});
    CHECK(inf.tail == TailVerdict::certified_infinite);
    CHECK(inf.tail_over_h == TailVerdict::certified_infinite);
  }
  const HarrisNorm unk = harris_weight_norm(poly, p, SymFunction(dv), {FunctionTail::Kind::unknown, 1.0, 0.0});
  CHECK(unk.tail == TailVerdict::undetermined);
  CHECK(to_string(TailVerdict::certified_finite) == std::string("certified-finite"));
}
