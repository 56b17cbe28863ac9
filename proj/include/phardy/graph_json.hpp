#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "phardy/metric.hpp"
#include "phardy/validate.hpp"

namespace phardy {

// Graph interchange object:
//   {"vertices": n, "measure": [...], "edges": [[x, y, b], ...], "interior": [...]}
// Each edge entry may carry a fourth element, the edge length w(x,y).
struct GraphDocument {
  RawGraph raw;
  // Per raw edge entry; present only when every entry carries a length.
  std::optional<std::vector<double>> lengths;
};

// Throws std::invalid_argument on schema violations (missing keys, wrong
// types); semantic problems are left to validate().
GraphDocument parse_graph_json(const nlohmann::json& j);

// Lengths aligned with g.edges(), matched through the raw edge pairs.
EdgeWeighting weighting_from_document(const WeightedGraph& g, const GraphDocument& doc);

nlohmann::json graph_to_json(const WeightedGraph& g, const EdgeWeighting* w = nullptr);

}  // namespace phardy
