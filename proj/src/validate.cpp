#include "phardy/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace phardy {

const char* to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::asymmetric_weight: return "asymmetric_weight";
    case FindingKind::duplicate_pair: return "duplicate_pair";
    case FindingKind::nonpositive_weight: return "nonpositive_weight";
    case FindingKind::nonpositive_measure: return "nonpositive_measure";
    case FindingKind::self_loop: return "self_loop";
    case FindingKind::missing_vertex: return "missing_vertex";
    case FindingKind::interior_incomplete: return "interior_incomplete";
    case FindingKind::shape_mismatch: return "shape_mismatch";
  }
  return "unknown";
}

std::size_t ValidationReport::count(FindingKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(), [kind](const Finding& f) { return f.kind == kind; }));
}

namespace {

std::string pair_name(VertexId x, VertexId y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

bool interior_at(const RawGraph& raw, VertexId x) {
  if (x >= raw.n) return false;
  return raw.interior.empty() ? true : (x < raw.interior.size() && raw.interior[x]);
}

}  // namespace

ValidationReport validate(const RawGraph& raw) {
  ValidationReport report;
  auto add = [&](FindingKind kind, std::vector<VertexId> v, std::string msg) {
    report.findings.push_back({kind, std::move(v), std::move(msg)});
  };

  if (raw.measure.size() != raw.n) {
    add(FindingKind::shape_mismatch, {},
        "measure has " + std::to_string(raw.measure.size()) + " entries for " +
            std::to_string(raw.n) + " vertices");
  }
  if (!raw.interior.empty() && raw.interior.size() != raw.n) {
    add(FindingKind::shape_mismatch, {},
        "interior mask has " + std::to_string(raw.interior.size()) + " entries for " +
            std::to_string(raw.n) + " vertices");
  }
  for (VertexId x = 0; x < raw.measure.size(); ++x) {
    if (!(raw.measure[x] > 0.0) || !std::isfinite(raw.measure[x])) {
      add(FindingKind::nonpositive_measure, {x},
          "m(" + std::to_string(x) + ") = " + std::to_string(raw.measure[x]) + " is not positive");
    }
  }

  // Oriented weights keyed by unordered pair: first = weight as (lo,hi), second = as (hi,lo).
  std::map<std::pair<VertexId, VertexId>, std::pair<std::vector<double>, std::vector<double>>> seen;
  for (const Edge& e : raw.edges) {
    if (e.x == e.y) {
      add(FindingKind::self_loop, {e.x}, "self-loop at " + std::to_string(e.x));
      continue;
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      add(FindingKind::nonpositive_weight, {e.x, e.y},
          "b" + pair_name(e.x, e.y) + " = " + std::to_string(e.weight) + " is not positive");
    }
    if (e.x >= raw.n || e.y >= raw.n) {
      add(FindingKind::missing_vertex, {e.x, e.y},
          "edge " + pair_name(e.x, e.y) + " leaves the truncation");
      for (VertexId v : {e.x, e.y}) {
        if (interior_at(raw, v)) {
          add(FindingKind::interior_incomplete, {v},
              "interior vertex " + std::to_string(v) + " has a neighbour outside the truncation");
        }
      }
      continue;
    }
    auto key = std::minmax(e.x, e.y);
    auto& slot = seen[{key.first, key.second}];
    (e.x < e.y ? slot.first : slot.second).push_back(e.weight);
  }
  for (const auto& [key, w] : seen) {
    const auto& [fwd, bwd] = w;
    if (fwd.size() > 1 || bwd.size() > 1) {
      add(FindingKind::duplicate_pair, {key.first, key.second},
          "pair " + pair_name(key.first, key.second) + " listed more than once per orientation");
    }
    if (!fwd.empty() && !bwd.empty() && fwd.front() != bwd.front()) {
      add(FindingKind::asymmetric_weight, {key.first, key.second},
          "b" + pair_name(key.first, key.second) + " = " + std::to_string(fwd.front()) +
              " but b" + pair_name(key.second, key.first) + " = " + std::to_string(bwd.front()));
    }
  }
  return report;
}

ValidationReport validate(const WeightedGraph& g) {
  ValidationReport report;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (!(g.measure(x) > 0.0)) {
      report.findings.push_back({FindingKind::nonpositive_measure, {x}, "nonpositive measure"});
    }
  }
  return report;
}

GraphValidationError::GraphValidationError(ValidationReport report)
    : std::invalid_argument([&] {
        std::string msg = "invalid graph:";
        for (const Finding& f : report.findings) msg += " [" + std::string(to_string(f.kind)) + "] " + f.message + ";";
        return msg;
      }()),
      report_(std::move(report)) {}

WeightedGraph build_graph(const RawGraph& raw) {
  ValidationReport report = validate(raw);
  // Dangling edges at non-interior vertices are expected in truncations.
  std::erase_if(report.findings,
                [](const Finding& f) { return f.kind == FindingKind::missing_vertex; });
  if (!report.ok()) throw GraphValidationError(std::move(report));

  std::map<std::pair<VertexId, VertexId>, double> merged;
  for (const Edge& e : raw.edges) {
    if (e.x >= raw.n || e.y >= raw.n) continue;
    auto key = std::minmax(e.x, e.y);
    merged[{key.first, key.second}] = e.weight;
  }
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, w] : merged) edges.push_back({key.first, key.second, w});
  return WeightedGraph(raw.n, raw.measure, edges, raw.interior);
}

}  // namespace phardy
