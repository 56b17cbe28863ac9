#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "phardy/calculus.hpp"
#include "phardy/generators.hpp"
#include "phardy/metric.hpp"
#include "phardy/symtree.hpp"
#include "support.hpp"

using namespace phardy;
using testing::path_graph;

namespace {

WeightedGraph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, i, 1.0});
  return WeightedGraph(leaves + 1, std::vector<double>(leaves + 1, 1.0), e);
}

}  // namespace

TEST_CASE("path distance") {
  const WeightedGraph g = path_graph(3);
  const DistanceField d = path_distance(g, EdgeWeighting::unit(g), 0);
  CHECK(d.dist == std::vector<double>{0, 1, 2});

  SUBCASE("star through the hub") {
    const WeightedGraph s = star(3);
    const EdgeWeighting w(s, {1.0, 2.0, 3.0});
    CHECK(path_distance(s, w, 1).dist[3] == 4.0);
  }
  SUBCASE("unreachable and negative") {
    const WeightedGraph two(3, {1, 1, 1}, std::vector<Edge>{{0, 1, 1.0}});
    CHECK(std::isinf(path_distance(two, EdgeWeighting::unit(two), 0).dist[2]));
    CHECK_THROWS(EdgeWeighting(two, {-1.0}));
  }
  SUBCASE("combinatorial distances are integers with edge triangle inequality") {
    Rng rng(3);
    RandomGraphOptions o;
    o.vertices = 25;
    o.extra_edges = 20;
    const WeightedGraph r = random_graph(rng, o);
    const DistanceField f = path_distance(r, EdgeWeighting::unit(r), 4);
    for (double v : f.dist) CHECK(v == std::floor(v));
    for (const Edge& e : r.edges()) {
      CHECK(f.dist[e.y] <= f.dist[e.x] + 1.0);
      CHECK(f.dist[e.x] <= f.dist[e.y] + 1.0);
    }
  }
}

TEST_CASE("canonical intrinsic weight") {
  const WeightedGraph g = path_graph(3);
  const EdgeWeighting w = canonical_intrinsic_weight(g, Exponent(2));
  CHECK(w(g, 0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(w(g, 1, 0) == w(g, 0, 1));

  SUBCASE("regular graph") {
    // cycle of length 6, degree 2
    std::vector<Edge> e;
    for (std::size_t i = 0; i < 6; ++i) e.push_back({i, (i + 1) % 6, 1.0});
    const WeightedGraph c(6, std::vector<double>(6, 1.0), e);
    for (double p : {1.5, 2.0, 3.0}) {
      const EdgeWeighting cw = canonical_intrinsic_weight(c, Exponent(p));
      for (double v : cw.values()) {
        CHECK(v == doctest::Approx(std::pow(0.5, 1.0 / p)).epsilon(1e-14));
      }
    }
  }
  SUBCASE("binary tree interior edge") {
    const SymTree t = SymTree::explicit_profile({2}, {1.0});
    const MaterializedTree mt = materialize(t, 3);
    const EdgeWeighting w2 = canonical_intrinsic_weight(mt.graph, Exponent(2));
    // vertex 1 is in S_1, vertex 3 in S_2: both have degree 3
    CHECK(w2(mt.graph, 1, 3) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
  }
}

TEST_CASE("intrinsic check") {
  SUBCASE("combinatorial metric with deg/m <= 1") {
    const WeightedGraph g = path_graph(4, 1.0, 2.0);
    const IntrinsicReport r =
        check_intrinsic(g, Exponent(2), DistanceOracle::edge_weighting(g, EdgeWeighting::unit(g)));
    CHECK(r.verdict);
  }
  SUBCASE("combinatorial metric on the unit path") {
    const WeightedGraph g = path_graph(3);
    const IntrinsicReport r =
        check_intrinsic(g, Exponent(2), DistanceOracle::path_metric(g, EdgeWeighting::unit(g)));
    CHECK_FALSE(r.verdict);
    CHECK(r.slack[1] == doctest::Approx(-1.0));
  }
  SUBCASE("canonical weight on random graphs, both backends") {
    Rng root(17);
    for (int s = 0; s < 30; ++s) {
      Rng rng = root.split(s);
      RandomGraphOptions o;
      o.vertices = 3 + rng.index(20);
      o.extra_edges = rng.index(15);
      o.leaves_exterior = rng.bernoulli(0.5);
      const WeightedGraph g = random_graph(rng, o);
      const Exponent p(testing::sweep_exponents()[rng.index(6)]);
      const EdgeWeighting w = canonical_intrinsic_weight(g, p);
      CHECK(check_intrinsic(g, p, DistanceOracle::edge_weighting(g, w)).verdict);
      CHECK(check_intrinsic(g, p, DistanceOracle::path_metric(g, w)).verdict);
    }
  }
  SUBCASE("undefined callback") {
    const WeightedGraph g = path_graph(3);
    const DistanceOracle bad = DistanceOracle::callback("nan", [](VertexId, VertexId) { return std::nan(""); });
    CHECK_THROWS_AS(check_intrinsic(g, Exponent(2), bad), std::domain_error);
  }
}

TEST_CASE("path metric is below the edge weighting") {
  Rng root(23);
  for (int s = 0; s < 20; ++s) {
    Rng rng = root.split(s);
    RandomGraphOptions o;
    o.vertices = 5 + rng.index(15);
    o.extra_edges = 5 + rng.index(15);
    const WeightedGraph g = random_graph(rng, o);
    std::vector<double> lengths(g.num_edges());
    for (double& v : lengths) v = rng.uniform(0.1, 3.0);
    const EdgeWeighting w(g, lengths);
    for (const Edge& e : g.edges()) {
      const double dw = path_distance(g, w, e.x).dist[e.y];
      CHECK(dw <= w(g, e.x, e.y));
    }
    const DistanceOracle pm = DistanceOracle::path_metric(g, w);
    for (const Edge& e : g.edges()) CHECK(pm(g, e.x, e.y) == path_distance(g, w, e.x).dist[e.y]);
  }
}

TEST_CASE("lipschitz constant") {
  const WeightedGraph one(2, {1, 1}, std::vector<Edge>{{0, 1, 1.0}});
  const DistanceOracle unit = DistanceOracle::edge_weighting(one, EdgeWeighting::unit(one));
  CHECK(lipschitz_constant(one, unit, GraphFunction(std::vector<double>{0, 2})) == 2.0);
  CHECK(lipschitz_constant(one, unit, GraphFunction(2, 5.0)) == 0.0);
  const DistanceOracle zero = DistanceOracle::callback("zero", [](VertexId, VertexId) { return 0.0; });
  CHECK(lipschitz_constant(one, zero, GraphFunction(2, 5.0)) == 0.0);
  CHECK(std::isinf(lipschitz_constant(one, zero, GraphFunction(std::vector<double>{0, 1}))));

  SUBCASE("distance field is 1-Lipschitz and the Rademacher bound holds") {
    Rng root(31);
    for (int s = 0; s < 30; ++s) {
      Rng rng = root.split(s);
      RandomGraphOptions o;
      o.vertices = 4 + rng.index(15);
      o.extra_edges = rng.index(12);
      const WeightedGraph g = random_graph(rng, o);
      const Exponent p(testing::sweep_exponents()[rng.index(6)]);
      const EdgeWeighting w = canonical_intrinsic_weight(g, p);
      const DistanceOracle sigma = DistanceOracle::path_metric(g, w);
      const GraphFunction d(path_distance(g, w, rng.index(g.num_vertices())).dist);
      CHECK(lipschitz_constant(g, sigma, d) <= 1.0 + 1e-12);
      const GraphFunction f = random_function(rng, g.num_vertices(), -1.0, 1.0);
      const double lip = lipschitz_constant(g, sigma, f);
      for (VertexId x = 0; x < g.num_vertices(); ++x) {
        if (g.is_interior(x)) CHECK(grad_norm(g, p, f, x) <= lip * (1.0 + 1e-10));
      }
    }
  }
}

TEST_CASE("balls") {
  const WeightedGraph g = path_graph(5);
  const EdgeWeighting w = EdgeWeighting::unit(g);
  CHECK(ball(g, w, 2, 0.0) == std::vector<VertexId>{2});
  CHECK(ball(g, w, 0, 1.0) == std::vector<VertexId>{0, 1});
  CHECK(ball(g, w, 0, 100.0).size() == 5);
  const WeightedGraph split(3, {1, 1, 1}, std::vector<Edge>{{0, 1, 1.0}});
  CHECK(ball(split, EdgeWeighting::unit(split), 0, 1e9) == std::vector<VertexId>{0, 1});
}
