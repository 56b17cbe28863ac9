#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "phardy/cli/run.hpp"

using nlohmann::json;
using namespace phardy::cli;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(PHARDY_SPEC_DIR) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

json small_graph() {
  return json::parse(R"({"vertices": 4, "measure": [1, 1, 1, 1],
    "edges": [[0, 1, 1], [1, 2, 1], [2, 3, 1]], "interior": [false, true, true, false]})");
}

json without_timing(json report) {
  report.erase("timing");
  return report;
}

}  // namespace

TEST_CASE("boundary task on the exponential tree") {
  const RunOutcome out = run(load("exponential_boundary.json"));
  CHECK(out.exit_code == 0);
  const json& r = out.report.at("result");
  CHECK(r.at("classification").at("kind") == "nonempty");
  CHECK(r.at("xi").get<double>() == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-14));
  CHECK(r.at("xi_estimate").get<double>() == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-6));
  CHECK(r.at("delta").size() == 31);
  CHECK(out.report.at("tool").at("version") == kToolVersion);
}

TEST_CASE("validate") {
  const RunOutcome bad = run(load("malformed_graph.json"));
  CHECK(bad.exit_code == 1);
  CHECK_FALSE(bad.verdict);
  CHECK(bad.report.at("result").at("findings").size() == 3);
  const SpecCheck check = validate_spec(load("malformed_graph.json"));
  CHECK_FALSE(check.ok);
  CHECK(validate_spec(load("binary_tree.json")).ok);
  CHECK(run(json{{"instance", {{"graph", small_graph()}}}, {"task", "validate"}}).exit_code == 0);
}

TEST_CASE("hardy-verify on the polynomial example") {
  const RunOutcome out = run(load("polynomial_hardy.json"));
  CHECK(out.exit_code == 0);
  CHECK(out.verdict);
  CHECK(out.rows.size() == 200);
  const std::string csv = sweep_csv(out.rows);
  CHECK(csv.rfind("instance_id,p,check,margin,scale,verdict\n", 0) == 0);
  CHECK(csv.find(",false\n") == std::string::npos);
  SUBCASE("deterministic modulo timing") {
    const RunOutcome again = run(load("polynomial_hardy.json"));
    CHECK(without_timing(again.report).dump() == without_timing(out.report).dump());
    CHECK(sweep_csv(again.rows) == csv);
  }
  SUBCASE("seed override changes the sample") {
    RunOptions o;
    o.seed = 8;
    const RunOutcome other = run(load("polynomial_hardy.json"), o);
    CHECK(other.report.at("seed") == 8);
    CHECK(sweep_csv(other.rows) != csv);
  }
}

TEST_CASE("csv numbers round trip") {
  const RunOutcome out = run(load("polynomial_hardy.json"));
  std::istringstream in(sweep_csv(out.rows));
  std::string line;
  std::getline(in, line);
  for (const phardy::SweepRow& row : out.rows) {
    std::getline(in, line);
    std::stringstream fields(line);
    std::string id, p, check, margin;
    std::getline(fields, id, ',');
    std::getline(fields, p, ',');
    std::getline(fields, check, ',');
    std::getline(fields, margin, ',');
    CHECK(std::stod(margin) == row.margin);
  }
}

TEST_CASE("tasks and exit codes") {
  const json g = small_graph();
  CHECK(run(json{{"instance", {{"graph", g}}}, {"task", "certify"}, {"params", {{"p", 2}, {"h", {4, 3, 2, 1}}}}})
            .exit_code == 0);
  CHECK(run(json{{"instance", {{"graph", g}}}, {"task", "certify"},
                 {"params", {{"p", 2}, {"h", {4, 3, 2, 1}}, {"lambda", 5.0}}}})
            .exit_code == 2);
  const RunOutcome harris = run(json{{"instance", {{"graph", g}}}, {"task", "harris"},
                                     {"params", {{"p", 2}, {"h", {4, 3, 2, 1}}, {"f", {0, 1, 1, 0}}}}});
  CHECK(harris.report.at("result").at("tail") == "certified-finite");
  const RunOutcome opt = run(json{{"instance", {{"graph", g}}}, {"task", "optimal-constant"},
                                  {"params", {{"p", 2}, {"weight", {1, 1, 1, 1}}}}});
  CHECK(opt.exit_code == 0);
  // Dirichlet path with two free vertices: 1 + smallest eigenvalue of [[2,-1],[-1,2]]
  CHECK(opt.report.at("result").at("optimizer").at("estimate").get<double>() == doctest::Approx(2.0).epsilon(1e-6));

  const json poly = json::parse(R"({"tree": {"family": "polynomial", "gamma": 4, "eta": -1}})");
  const RunOutcome asym = run(json{{"instance", poly}, {"task", "asymptotics"}, {"params", {{"p", 2}}}});
  CHECK(asym.verdict);
  CHECK(asym.report.at("result").at("fitted_exponent").get<double>() == doctest::Approx(-1.5).epsilon(0.07));
  const RunOutcome cert = run(json{{"instance", poly}, {"task", "certify"}, {"params", {{"p", 2}}}});
  CHECK(cert.report.at("result").at("stable") == true);
  const RunOutcome opt_tree = run(json{{"instance", poly}, {"task", "optimal-constant"}, {"params", {{"p", 2}}}});
  CHECK(opt_tree.verdict);

  const RunOutcome sweep = run(json{{"instance", {{"random_graph", {{"vertices", 6}}}}}, {"task", "picone"},
                                    {"params", {{"p", 3}, {"samples", 10}}}, {"seed", 4}});
  CHECK(sweep.exit_code == 0);
  CHECK(sweep.rows.size() == 10);
}

TEST_CASE("schema errors") {
  const json poly = json::parse(R"({"tree": {"family": "polynomial", "gamma": 4, "eta": -1}})");
  CHECK_THROWS_AS(run(json{{"instance", poly}, {"task", "nope"}}), std::invalid_argument);
  CHECK_THROWS_AS(run(json{{"instance", poly}}), std::invalid_argument);
  CHECK_THROWS_AS(run(json{{"instance", poly}, {"task", "boundary"}, {"params", {{"p", 1.0}}}}), std::invalid_argument);
  CHECK_THROWS_AS(run(json{{"task", "boundary"}}), std::invalid_argument);
  CHECK_THROWS_AS(run(json{{"instance", {{"graph", small_graph()}}}, {"task", "optimal-constant"}}),
                  std::invalid_argument);
  CHECK_FALSE(validate_spec(json{{"instance", poly}, {"task", "nope"}}).ok);
}

TEST_CASE("describe") {
  CHECK(describe(load("binary_tree.json")).find("31 vertices, 30 edges, spheres [1,2,4,8,16]") != std::string::npos);
  const std::string g = describe(json{{"instance", {{"graph", small_graph()}}}, {"task", "validate"}});
  CHECK(g.find("4 vertices, 3 edges, 2 interior") != std::string::npos);
  CHECK(g.find("weights [1, 1]") != std::string::npos);
  RunOptions small;
  small.cap_vertices = 10;
  const std::string refused = describe(load("binary_tree.json"), small);
  CHECK(refused.find("refusing to materialize 31 vertices") != std::string::npos);
  CHECK(refused.find("cap of 10") != std::string::npos);
}

TEST_CASE("vertex cap") {
  const json big = json::parse(R"({"instance": {"tree": {"family": "explicit", "k": [2], "m": [1]}, "depth": 30},
                                   "task": "calculus-sweep"})");
  CHECK_THROWS_AS(run(big), std::length_error);
  RunOptions o;
  o.cap_vertices = 20;
  CHECK_THROWS_AS(run(load("binary_tree.json"), o), std::length_error);
}
