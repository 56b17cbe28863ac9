#include "phardy/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "phardy/calculus.hpp"
#include "phardy/generators.hpp"
#include "phardy/graph_json.hpp"
#include "phardy/hardy.hpp"
#include "phardy/optimizer.hpp"
#include "phardy/symtree.hpp"
#include "phardy/tree_hardy.hpp"
#include "phardy/validate.hpp"

namespace phardy::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTasks = {"validate", "calculus-sweep", "picone", "certify",
                                      "hardy-verify", "harris", "optimal-constant",
                                      "boundary", "asymptotics"};

const std::vector<double> kSweepExponents = {1.3, 1.5, 2.0, 2.7, 3.0, 4.0};

[[noreturn]] void schema(const std::string& what) { throw std::invalid_argument(what); }

// Integers built in code arrive signed, parsed ones unsigned.
bool nonnegative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

// Accessors for the "params" object of a spec.
class Params {
 public:
  Params(const json& j, std::string task) : j_(j), task_(std::move(task)) {}

  bool has(const char* key) const { return j_.contains(key); }

  double number(const char* key) const {
    if (!has(key)) schema("task " + task_ + " needs parameter \"" + key + "\"");
    if (!j_.at(key).is_number()) schema(std::string("parameter \"") + key + "\" must be a number");
    return j_.at(key).get<double>();
  }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::size_t index(const char* key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!nonnegative_integer(v)) {
      schema(std::string("parameter \"") + key + "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  std::vector<double> numbers(const char* key) const {
    if (!has(key)) schema("task " + task_ + " needs parameter \"" + key + "\"");
    const json& v = j_.at(key);
    if (!v.is_array()) schema(std::string("parameter \"") + key + "\" must be an array");
    std::vector<double> out;
    for (const json& x : v) {
      if (!x.is_number()) schema(std::string("parameter \"") + key + "\" must hold numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::vector<std::size_t> indices(const char* key) const {
    std::vector<std::size_t> out;
    if (!has(key)) return out;
    for (double v : numbers(key)) {
      if (v < 0 || v != std::floor(v)) schema(std::string("parameter \"") + key + "\" must hold indices");
      out.push_back(static_cast<std::size_t>(v));
    }
    return out;
  }

  std::string text(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_string()) schema(std::string("parameter \"") + key + "\" must be a string");
    return j_.at(key).get<std::string>();
  }

  const json& object(const char* key) const {
    if (!has(key) || !j_.at(key).is_object()) {
      schema("task " + task_ + " needs object parameter \"" + key + "\"");
    }
    return j_.at(key);
  }

  Exponent p() const {
    const double v = number("p");
    if (!(v > 1.0) || !std::isfinite(v)) schema("p must satisfy 1 < p < inf");
    return Exponent(v);
  }

  std::vector<double> exponents() const {
    std::vector<double> ps = has("ps") ? numbers("ps") : has("p") ? std::vector<double>{number("p")}
                                                                 : kSweepExponents;
    for (double v : ps) {
      if (!(v > 1.0) || !std::isfinite(v)) schema("p must satisfy 1 < p < inf");
    }
    return ps;
  }

  const std::string& task() const { return task_; }

 private:
  const json& j_;
  std::string task_;
};

enum class InstanceKind { graph, tree, random_graph };

struct Instance {
  InstanceKind kind = InstanceKind::graph;
  json graph;
  std::optional<SymTree> tree;
  std::optional<std::size_t> depth;
  RandomGraphOptions random;
};

double field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) schema(std::string("tree field \"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

SymTree parse_tree(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    schema("tree instance needs a string \"family\"");
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "polynomial" || family == "exponential") {
    if (!j.contains("gamma") || !j.contains("eta")) schema(family + " tree needs \"gamma\" and \"eta\"");
    const double gamma = field(j, "gamma", 0.0), eta = field(j, "eta", 0.0);
    const double c_k = field(j, "c_k", 1.0), c_m = field(j, "c_m", 1.0);
    return family == "polynomial" ? SymTree::polynomial(gamma, c_k, eta, c_m)
                                  : SymTree::exponential(gamma, c_k, eta, c_m);
  }
  if (family == "explicit") {
    if (!j.contains("k") || !j.contains("m") || !j.at("k").is_array() || !j.at("m").is_array()) {
      schema("explicit tree needs arrays \"k\" and \"m\"");
    }
    std::vector<std::uint64_t> k;
    for (const json& v : j.at("k")) {
      if (!nonnegative_integer(v)) schema("explicit branching numbers must be positive integers");
      k.push_back(v.get<std::uint64_t>());
    }
    std::vector<double> m;
    for (const json& v : j.at("m")) {
      if (!v.is_number()) schema("explicit measures must be numbers");
      m.push_back(v.get<double>());
    }
    const std::string tail = j.value("tail", std::string("constant"));
    if (tail != "constant" && tail != "none") schema("explicit tail must be \"constant\" or \"none\"");
    return SymTree::explicit_profile(std::move(k), std::move(m),
                                     tail == "constant" ? ExplicitTail::constant : ExplicitTail::none);
  }
  schema("unknown tree family \"" + family + "\"");
}

Instance parse_instance(const json& spec) {
  if (!spec.contains("instance") || !spec.at("instance").is_object()) {
    schema("spec needs an \"instance\" object");
  }
  const json& in = spec.at("instance");
  Instance inst;
  const int kinds = static_cast<int>(in.contains("graph")) + static_cast<int>(in.contains("tree")) +
                    static_cast<int>(in.contains("random_graph"));
  if (kinds != 1) schema("instance must hold exactly one of \"graph\", \"tree\", \"random_graph\"");
  if (in.contains("graph")) {
    inst.kind = InstanceKind::graph;
    inst.graph = in.at("graph");
    (void)parse_graph_json(inst.graph);
  } else if (in.contains("tree")) {
    inst.kind = InstanceKind::tree;
    inst.tree = parse_tree(in.at("tree"));
    for (const json* holder : {&in, &in.at("tree")}) {
      if (!holder->contains("depth")) continue;
      if (!nonnegative_integer(holder->at("depth"))) schema("\"depth\" must be a nonnegative integer");
      inst.depth = holder->at("depth").get<std::size_t>();
    }
  } else {
    inst.kind = InstanceKind::random_graph;
    const json& r = in.at("random_graph");
    if (!r.is_object()) schema("\"random_graph\" must be an object");
    inst.random.vertices = r.value("vertices", std::size_t{10});
    inst.random.extra_edges = r.value("extra_edges", std::size_t{0});
    inst.random.leaves_exterior = r.value("leaves_exterior", false);
    inst.random.weight_lo = r.value("weight_lo", inst.random.weight_lo);
    inst.random.weight_hi = r.value("weight_hi", inst.random.weight_hi);
    inst.random.measure_lo = r.value("measure_lo", inst.random.measure_lo);
    inst.random.measure_hi = r.value("measure_hi", inst.random.measure_hi);
  }
  return inst;
}

boost::multiprecision::cpp_int tree_vertex_count(const SymTree& t, std::size_t depth) {
  boost::multiprecision::cpp_int total = 0;
  for (std::size_t n = 0; n <= depth; ++n) total += sphere_size(t, n);
  return total;
}

void check_cap(const boost::multiprecision::cpp_int& count, std::size_t cap) {
  if (count > cap) {
    throw std::length_error("instance needs " + count.str() + " vertices, above the cap of " +
                            std::to_string(cap) + " (--cap-vertices)");
  }
}

const SymTree& require_tree(const Instance& inst, const std::string& task) {
  if (inst.kind != InstanceKind::tree) schema("task " + task + " needs a tree instance");
  return *inst.tree;
}

// The instance as a finite weighted graph; random graphs draw from rng.
WeightedGraph instance_graph(const Instance& inst, const RunOptions& opt, Rng& rng) {
  switch (inst.kind) {
    case InstanceKind::graph: {
      const GraphDocument doc = parse_graph_json(inst.graph);
      check_cap(doc.raw.n, opt.cap_vertices);
      return build_graph(doc.raw);
    }
    case InstanceKind::tree: {
      if (!inst.depth) schema("tree instance needs \"depth\" to be used as a graph");
      check_cap(tree_vertex_count(*inst.tree, *inst.depth), opt.cap_vertices);
      return materialize(*inst.tree, *inst.depth, opt.cap_vertices).graph;
    }
    case InstanceKind::random_graph:
      check_cap(inst.random.vertices, opt.cap_vertices);
      return random_graph(rng, inst.random);
  }
  schema("unknown instance kind");
}

GraphFunction function_param(const Params& params, const char* key, const WeightedGraph& g) {
  std::vector<double> v = params.numbers(key);
  if (v.size() != g.num_vertices()) {
    schema(std::string("parameter \"") + key + "\" needs one value per vertex");
  }
  return GraphFunction(std::move(v));
}

std::vector<VertexId> interior_vertices(const WeightedGraph& g) {
  std::vector<VertexId> out;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (g.is_interior(x)) out.push_back(x);
  }
  return out;
}

struct TaskResult {
  json result;
  std::vector<SweepRow> rows;
  bool verdict = true;
  bool error = false;  // report written, exit status 1
};

SweepRow margin_row(const std::string& id, double p, const std::string& check, const Margin& m,
                    double tol = 1e-10) {
  return {id, p, check, m.value(), m.scale(), m.holds(tol)};
}

TaskResult task_validate(const Instance& inst, const RunOptions& opt) {
  TaskResult out;
  ValidationReport report;
  if (inst.kind == InstanceKind::graph) {
    report = validate(parse_graph_json(inst.graph).raw);
  } else {
    Rng rng(0);
    report = validate(instance_graph(inst, opt, rng));
  }
  out.result = to_json(report);
  out.verdict = report.ok();
  out.error = !report.ok();
  return out;
}

TaskResult task_calculus_sweep(const Instance& inst, const Params& params, const RunOptions& opt,
                               Rng& root) {
  TaskResult out;
  const std::vector<double> ps = params.exponents();
  const std::size_t samples = params.index("samples", 10);
  const std::vector<ConcaveMap> maps = {ConcaveMap::sqrt(), ConcaveMap::power(0.3), ConcaveMap::log1p()};
  std::size_t checks = 0, failures = 0;
  double worst_comp = 0.0, worst_gap = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = root.split(s);
    const WeightedGraph g = instance_graph(inst, opt, rng);
    for (double pv : ps) {
      const Exponent p(pv);
      const GraphFunction h = random_function(rng, g.num_vertices(), 0.1, 3.0);
      for (VertexId x : interior_vertices(g)) {
        const std::string id = "s" + std::to_string(s) + "/x" + std::to_string(x);
        const CompIdentity c = comp_identity(g, p, h, x);
        const double cscale = 1.0 + std::abs(c.lhs);
        out.rows.push_back({id, pv, "comp", -std::abs(c.residual), cscale,
                            std::abs(c.residual) <= 1e-10 * cscale});
        worst_comp = std::max(worst_comp, std::abs(c.residual) / cscale);
        out.rows.push_back(margin_row(id, pv, "main-estimate", main_estimate_gap(g, p, h, x)));
        for (const ConcaveMap& phi : maps) {
          out.rows.push_back(margin_row(id, pv, "chain:" + phi.name, chain_lower_bound_gap(g, p, h, phi, x)));
        }
      }
    }
  }
  for (const SweepRow& r : out.rows) {
    ++checks;
    if (!r.verdict) ++failures;
    if (r.check != "comp") worst_gap = std::min(worst_gap, r.margin / r.scale);
  }
  out.verdict = failures == 0;
  out.result = {{"checks", checks},
                {"failures", failures},
                {"max_relative_comp_residual", json_number(worst_comp)},
                {"min_relative_gap", json_number(worst_gap)},
                {"chain_reading", to_string(ChainReading::infimum)}};
  return out;
}

TaskResult task_picone(const Instance& inst, const Params& params, const RunOptions& opt, Rng& root) {
  TaskResult out;
  const std::vector<double> ps = params.exponents();
  const std::size_t samples = params.index("samples", 100);
  double worst = std::numeric_limits<double>::infinity();
  std::size_t failures = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = root.split(s);
    const WeightedGraph g = instance_graph(inst, opt, rng);
    for (double pv : ps) {
      const Exponent p(pv);
      const GraphFunction h = random_function(rng, g.num_vertices(), 0.1, 3.0);
      const GraphFunction phi = random_test_function(rng, g);
      const Margin m = picone_check(g, p, h, phi);
      out.rows.push_back(margin_row("s" + std::to_string(s), pv, "picone", m));
      worst = std::min(worst, m.value() / m.scale());
      if (!m.holds()) ++failures;
    }
  }
  out.verdict = failures == 0;
  out.result = {{"checks", out.rows.size()}, {"failures", failures},
                {"min_relative_margin", json_number(worst)}};
  return out;
}

struct TreeWindowSetup {
  TreeCertificateScan scan;
  std::size_t n_lo = 0, n_hi = 0, first = 0, last = 0;  // window and support spheres
};

std::optional<TreeWindowSetup> tree_window(const SymTree& t, Exponent p, const Params& params) {
  const std::size_t horizon = params.index("horizon", 500);
  const std::size_t width = params.index("width", 20);
  auto scan = superharmonic_certificate(t, p, horizon, 0.0);
  if (!scan) return std::nullopt;
  TreeWindowSetup w;
  w.scan = *scan;
  w.first = params.index("support_start", scan->n0);
  if (w.first < scan->n0) schema("support_start lies inside the exceptional set");
  w.last = w.first + width;
  w.n_lo = w.first == 0 ? 0 : w.first - 1;
  w.n_hi = w.last + 1;
  return w;
}

TaskResult task_certify(const Instance& inst, const Params& params, const RunOptions& opt, Rng& rng) {
  TaskResult out;
  const Exponent p = params.p();
  if (inst.kind == InstanceKind::tree) {
    const auto scan = superharmonic_certificate(*inst.tree, p, params.index("horizon", 500),
                                                params.number("lambda", 0.0));
    out.verdict = scan.has_value() && scan->cert.valid();
    out.result = scan ? to_json(*scan) : json{{"certificate", nullptr}};
    return out;
  }
  const WeightedGraph g = instance_graph(inst, opt, rng);
  CertificateOptions co;
  co.exceptional = params.indices("exceptional");
  if (params.has("lambda")) co.lambda = params.number("lambda");
  const auto cert = superharmonic_certificate(g, p, function_param(params, "h", g), co);
  out.verdict = cert.has_value();
  out.result = {{"certificate", cert ? to_json(*cert) : json(nullptr)}};
  return out;
}

void hardy_rows(TaskResult& out, const HardyReport& report, double p) {
  for (std::size_t i = 0; i < report.first.size(); ++i) {
    out.rows.push_back(margin_row("phi" + std::to_string(i), p, "hardy-first", report.first[i]));
    out.rows.push_back(margin_row("phi" + std::to_string(i), p, "hardy-second", report.second[i]));
  }
}

TaskResult task_hardy_verify(const Instance& inst, const Params& params, const RunOptions& opt,
                             Rng& rng) {
  TaskResult out;
  const Exponent p = params.p();
  const std::size_t samples = params.index("samples", 100);
  if (inst.kind == InstanceKind::tree) {
    const SymTree& t = *inst.tree;
    const auto w = tree_window(t, p, params);
    if (!w) {
      out.verdict = false;
      out.result = {{"certificate", nullptr}, {"reason", "no lambda = 0 certificate at the horizon"}};
      return out;
    }
    const TreeHardyInstance hi = tree_hardy_instance(t, p, w->scan.cert, w->n_lo, w->n_hi);
    std::vector<GraphFunction> phis;
    for (std::size_t s = 0; s < samples; ++s) {
      Rng r = rng.split(s);
      phis.push_back(random_window_function(r, hi.window.graph.num_vertices(), hi.window.vertex(w->first),
                                            hi.window.vertex(w->last)));
    }
    const HardyReport report = verify_hardy(hi, p, phis);
    hardy_rows(out, report, p.value());
    out.verdict = report.verdict;
    out.result = {{"certificate", to_json(w->scan)},
                  {"window", {w->n_lo, w->n_hi}},
                  {"support_spheres", {w->first, w->last}},
                  {"report", to_json(report)}};
    return out;
  }
  const WeightedGraph g = instance_graph(inst, opt, rng);
  const GraphFunction h = function_param(params, "h", g);
  CertificateOptions co;
  co.exceptional = params.indices("exceptional");
  if (params.has("lambda")) co.lambda = params.number("lambda");
  const auto cert = superharmonic_certificate(g, p, h, co);
  if (!cert) {
    out.verdict = false;
    out.result = {{"certificate", nullptr}, {"reason", "the proposed lambda fails"}};
    return out;
  }
  std::vector<GraphFunction> phis;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng r = rng.split(s);
    GraphFunction phi = random_test_function(r, g);
    for (VertexId x = 0; x < g.num_vertices(); ++x) {
      if (!cert->covers(x)) phi[x] = 0.0;
    }
    if (!phi.support().empty()) phis.push_back(std::move(phi));
  }
  const HardyReport report = verify_hardy(g, p, h, *cert, phis);
  hardy_rows(out, report, p.value());
  out.verdict = report.verdict;
  out.result = {{"certificate", to_json(*cert)}, {"report", to_json(report)}};
  return out;
}

TaskResult task_harris(const Instance& inst, const Params& params, const RunOptions& opt, Rng& rng) {
  TaskResult out;
  const Exponent p = params.p();
  HarrisNorm norm;
  if (inst.kind == InstanceKind::tree) {
    const SymTree& t = *inst.tree;
    const json& fj = params.object("f");
    const Params fp(fj, params.task());
    const std::size_t horizon = fp.index("horizon", 100);
    FunctionTail tail;
    const std::string kind = fp.text("tail", "delta_power");
    if (kind == "delta_power") tail.kind = FunctionTail::Kind::delta_power;
    else if (kind == "zero") tail.kind = FunctionTail::Kind::zero;
    else if (kind == "unknown") tail.kind = FunctionTail::Kind::unknown;
    else schema("f.tail must be \"delta_power\", \"zero\" or \"unknown\"");
    tail.exponent = fp.number("exponent", 1.0);
    tail.coefficient = fp.number("coefficient", 1.0);
    const BoundaryDistance table(t, p, horizon);
    std::vector<double> f(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
      f[n] = tail.coefficient * std::pow(table.mid(n), tail.exponent);
    }
    norm = harris_weight_norm(t, p, SymFunction(std::move(f)), tail);
  } else {
    const WeightedGraph g = instance_graph(inst, opt, rng);
    norm = harris_weight_norm(g, p, function_param(params, "h", g), function_param(params, "f", g));
  }
  out.verdict = norm.tail != TailVerdict::undetermined && norm.tail_over_h != TailVerdict::undetermined;
  out.result = to_json(norm);
  return out;
}

OptimizerConfig optimizer_config(const Params& params, std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.restarts = params.index("restarts", cfg.restarts);
  cfg.max_iterations = params.index("max_iterations", cfg.max_iterations);
  cfg.tolerance = params.number("tolerance", cfg.tolerance);
  return cfg;
}

TaskResult task_optimal_constant(const Instance& inst, const Params& params, const RunOptions& opt,
                                 Rng& rng, std::uint64_t seed) {
  TaskResult out;
  const Exponent p = params.p();
  OptimizerConfig cfg = optimizer_config(params, seed);
  if (inst.kind == InstanceKind::tree) {
    const SymTree& t = *inst.tree;
    const auto w = tree_window(t, p, params);
    if (!w) {
      out.verdict = false;
      out.result = {{"certificate", nullptr}, {"reason", "no lambda = 0 certificate at the horizon"}};
      return out;
    }
    const TreeHardyInstance hi = tree_hardy_instance(t, p, w->scan.cert, w->n_lo, w->n_hi);
    const WeightedGraph& g = hi.window.graph;
    GraphFunction weight(g.num_vertices(), 0.0);
    for (std::size_t n = w->first; n <= w->last; ++n) {
      const VertexId x = hi.window.vertex(n);
      cfg.support.push_back(x);
      weight[x] = hardy_weights(g, p, hi.h, x).w_half;
    }
    cfg.initial.push_back(weight);
    for (double a : {0.5, 1.0, 2.0}) {
      GraphFunction f(g.num_vertices(), 0.0);
      for (VertexId x : cfg.support) f[x] = std::pow(hi.h[x], a);
      cfg.initial.push_back(f);
    }
    const OptimizerResult r = optimal_constant(g, p, weight, cfg);
    const double bound = 1.0 / p.value();
    out.verdict = r.estimate >= bound - 1e-8;
    out.rows.push_back({"window", p.value(), "optimal-constant", r.estimate - bound,
                        std::max(std::abs(r.estimate), 1.0), out.verdict});
    out.result = {{"certificate", to_json(w->scan)},
                  {"support_spheres", {w->first, w->last}},
                  {"weight", "w_half"},
                  {"lower_bound", json_number(bound)},
                  {"optimizer", to_json(r)}};
    return out;
  }
  const WeightedGraph g = instance_graph(inst, opt, rng);
  cfg.support = params.indices("support");
  GraphFunction weight = function_param(params, "weight", g);
  const OptimizerResult r = optimal_constant(g, p, weight, cfg);
  out.verdict = true;
  json result = {{"optimizer", to_json(r)}};
  if (params.has("lower_bound")) {
    const double bound = params.number("lower_bound");
    out.verdict = r.estimate >= bound - 1e-8;
    result["lower_bound"] = json_number(bound);
  }
  out.rows.push_back({"graph", p.value(), "optimal-constant", r.estimate, 1.0, out.verdict});
  out.result = result;
  return out;
}

TaskResult task_boundary(const Instance& inst, const Params& params) {
  TaskResult out;
  const SymTree& t = require_tree(inst, params.task());
  const Exponent p = params.p();
  const BoundaryClassification c = boundary_classification(t, p);
  out.result = {{"classification", to_json(c)}};
  if (c.kind == BoundaryKind::nonempty) {
    const std::size_t n_max = params.index("n_max", 50);
    const BoundaryDistance table(t, p, n_max);
    json rows = json::array();
    for (std::size_t n = 0; n <= n_max; ++n) {
      const Interval d = table.at(n);
      rows.push_back({{"n", n}, {"lo", json_number(d.lo)}, {"hi", json_number(d.hi)},
                      {"alpha", json_number(table.alpha(n))}});
    }
    out.result["delta"] = rows;
    out.result["horizon"] = table.horizon();
    out.result["tail"] = to_json(table.tail());
    if (t.family() == TreeFamily::exponential) {
      out.result["xi"] = json_number(c.decay);
      out.result["xi_estimate"] = json_number(table.mid(n_max) / table.mid(n_max - (n_max > 0 ? 1 : 0)));
    }
    const TreeEdgeRatio er = edge_ratio(t, p, n_max);
    out.result["edge_ratio"] = {{"scanned_max", json_number(er.scanned_max)},
                                {"argmax", er.argmax},
                                {"certified_sup", json_number(er.certified_sup)}};
  }
  out.verdict = c.kind != BoundaryKind::undetermined;
  return out;
}

TaskResult task_asymptotics(const Instance& inst, const Params& params) {
  TaskResult out;
  const SymTree& t = require_tree(inst, params.task());
  const Exponent p = params.p();
  if (t.family() == TreeFamily::polynomial) {
    const std::size_t n1 = params.index("n1", 50), n2 = params.index("n2", 200);
    const double tol = params.number("tolerance", 0.1);
    const double s = (t.gamma() - t.eta()) / p.value();
    const BoundaryDistance table(t, p, n2);
    const std::vector<double> mids = table.midpoints();
    const double slope = fit_exponent(mids, n1, n2);
    const std::size_t b1 = params.index("band_n1", 10), b2 = params.index("band_n2", 200);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t n = std::max<std::size_t>(b1, 1); n <= b2; ++n) {
      const double g = sym_grad_delta(t, p, n);
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    const bool slope_ok = std::abs(slope - (1.0 - s)) <= tol;
    const bool band_ok = hi / lo <= 10.0;
    out.verdict = slope_ok && band_ok;
    out.rows.push_back({"delta-slope", p.value(), "fit_exponent", tol - std::abs(slope - (1.0 - s)), 1.0, slope_ok});
    out.rows.push_back({"grad-band", p.value(), "band_ratio", 10.0 - hi / lo, 10.0, band_ok});
    out.result = {{"fitted_exponent", json_number(slope)}, {"expected", json_number(1.0 - s)},
                  {"range", {n1, n2}}, {"grad_delta_band", {json_number(lo), json_number(hi)}},
                  {"band_ratio", json_number(hi / lo)}};
    return out;
  }
  if (t.family() == TreeFamily::exponential) {
    const std::size_t n1 = params.index("n1", 20), n2 = params.index("n2", 60);
    const double tol = params.number("tolerance", 1e-3);
    const double xi = std::pow(t.eta() / t.gamma(), 1.0 / p.value());
    const BoundaryDistance table(t, p, n2 + 1);
    double worst = 0.0;
    json ratios = json::array();
    for (std::size_t n = n1; n <= n2; ++n) {
      const double r = table.mid(n + 1) / table.mid(n);
      worst = std::max(worst, std::abs(r - xi));
      ratios.push_back(json_number(r));
    }
    out.verdict = worst <= tol;
    out.rows.push_back({"delta-ratio", p.value(), "ratio_vs_xi", tol - worst, 1.0, out.verdict});
    out.result = {{"xi", json_number(xi)}, {"max_deviation", json_number(worst)},
                  {"range", {n1, n2}}, {"ratios", ratios}};
    return out;
  }
  schema("asymptotics needs a polynomial or exponential tree");
}

std::uint64_t resolve_seed(const json& spec, const RunOptions& opt) {
  if (opt.seed) return *opt.seed;
  if (spec.contains("seed")) {
    const json& seed = spec.at("seed");
    if (!nonnegative_integer(seed)) {
      schema("\"seed\" must be a nonnegative integer");
    }
    return spec.at("seed").get<std::uint64_t>();
  }
  return 0;
}

std::string require_task(const json& spec) {
  if (!spec.is_object()) schema("spec must be a JSON object");
  if (!spec.contains("task") || !spec.at("task").is_string()) schema("spec needs a string \"task\"");
  const std::string task = spec.at("task").get<std::string>();
  if (!kTasks.count(task)) schema("unknown task \"" + task + "\"");
  if (spec.contains("params") && !spec.at("params").is_object()) schema("\"params\" must be an object");
  return task;
}

template <class T>
std::string range_text(T lo, T hi) {
  std::ostringstream s;
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.6g, %.6g]", static_cast<double>(lo), static_cast<double>(hi));
  s << buf;
  return s.str();
}

std::string describe_graph(const WeightedGraph& g) {
  double mlo = std::numeric_limits<double>::infinity(), mhi = 0.0;
  double blo = std::numeric_limits<double>::infinity(), bhi = 0.0;
  double rlo = std::numeric_limits<double>::infinity(), rhi = 0.0;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    mlo = std::min(mlo, g.measure(x));
    mhi = std::max(mhi, g.measure(x));
    rlo = std::min(rlo, degree_ratio(g, x));
    rhi = std::max(rhi, degree_ratio(g, x));
  }
  for (const Edge& e : g.edges()) {
    blo = std::min(blo, e.weight);
    bhi = std::max(bhi, e.weight);
  }
  std::ostringstream s;
  s << g.num_vertices() << " vertices, " << g.num_edges() << " edges, " << g.num_interior()
    << " interior\n";
  if (g.num_vertices() > 0) s << "measure " << range_text(mlo, mhi) << ", deg/m " << range_text(rlo, rhi) << '\n';
  if (g.num_edges() > 0) s << "weights " << range_text(blo, bhi) << '\n';
  return s.str();
}

}  // namespace

RunOutcome run(const json& spec, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const std::string task = require_task(spec);
  const Instance inst = parse_instance(spec);
  static const json kEmpty = json::object();
  const Params params(spec.contains("params") ? spec.at("params") : kEmpty, task);
  const std::uint64_t seed = resolve_seed(spec, opt);
  Rng rng(seed);

  TaskResult r;
  if (task == "validate") r = task_validate(inst, opt);
  else if (task == "calculus-sweep") r = task_calculus_sweep(inst, params, opt, rng);
  else if (task == "picone") r = task_picone(inst, params, opt, rng);
  else if (task == "certify") r = task_certify(inst, params, opt, rng);
  else if (task == "hardy-verify") r = task_hardy_verify(inst, params, opt, rng);
  else if (task == "harris") r = task_harris(inst, params, opt, rng);
  else if (task == "optimal-constant") r = task_optimal_constant(inst, params, opt, rng, seed);
  else if (task == "boundary") r = task_boundary(inst, params);
  else r = task_asymptotics(inst, params);

  RunOutcome out;
  out.verdict = r.verdict;
  out.rows = std::move(r.rows);
  out.exit_code = r.error ? 1 : (r.verdict ? 0 : 2);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.report = {{"tool", {{"name", "phardy"}, {"version", kToolVersion}}},
                {"spec", spec},
                {"seed", seed},
                {"task", task},
                {"result", std::move(r.result)},
                {"verdict", out.verdict},
                {"timing", {{"seconds", seconds}}}};
  return out;
}

std::string describe(const json& spec, const RunOptions& opt) {
  const Instance inst = parse_instance(spec);
  std::ostringstream s;
  if (inst.kind == InstanceKind::tree) {
    const SymTree& t = *inst.tree;
    s << to_string(t.family()) << " tree";
    if (t.family() != TreeFamily::explicit_list) {
      s << " (gamma=" << format_double(t.gamma()) << ", c_k=" << format_double(t.c_k())
        << ", eta=" << format_double(t.eta()) << ", c_m=" << format_double(t.c_m()) << ')';
    }
    s << '\n';
    const bool bounded = inst.depth.has_value();
    const std::size_t depth = bounded ? *inst.depth : 5;
    if (bounded) {
      const auto count = tree_vertex_count(t, depth);
      if (count > opt.cap_vertices) {
        s << "refusing to materialize " << count.str() << " vertices: above the cap of "
          << opt.cap_vertices << " (--cap-vertices)\n";
        return s.str();
      }
      s << count.str() << " vertices, " << boost::multiprecision::cpp_int(count - 1).str() << " edges, spheres [";
    } else {
      s << "spheres [";
    }
    for (std::size_t n = 0; n <= depth; ++n) s << (n ? "," : "") << sphere_size(t, n).str();
    s << (bounded ? "]\n" : ",...]\n");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t n = 0; n <= depth; ++n) {
      const double d = t.degree(n);
      const double r = std::isfinite(d) ? d / t.measure(n) : std::exp(t.log_degree(n) - t.log_measure(n));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    s << "deg/m " << range_text(lo, hi) << " on spheres 0.." << depth << '\n';
    return s.str();
  }
  Rng rng(resolve_seed(spec, opt));
  s << describe_graph(instance_graph(inst, opt, rng));
  return s.str();
}

SpecCheck validate_spec(const json& spec, const RunOptions& opt) {
  SpecCheck out;
  try {
    require_task(spec);
    const Instance inst = parse_instance(spec);
    if (inst.kind == InstanceKind::graph) {
      const ValidationReport report = validate(parse_graph_json(inst.graph).raw);
      for (const Finding& f : report.findings) {
        out.messages.push_back(std::string(to_string(f.kind)) + ": " + f.message);
      }
      out.ok = report.ok();
    } else if (inst.kind == InstanceKind::tree && inst.depth) {
      check_cap(tree_vertex_count(*inst.tree, *inst.depth), opt.cap_vertices);
    }
  } catch (const std::exception& e) {
    out.ok = false;
    out.messages.push_back(e.what());
  }
  return out;
}

}  // namespace phardy::cli
