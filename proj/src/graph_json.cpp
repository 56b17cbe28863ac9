#include "phardy/graph_json.hpp"

#include <stdexcept>

namespace phardy {

using nlohmann::json;

GraphDocument parse_graph_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph must be a JSON object");
  for (const char* key : {"vertices", "measure", "edges"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("graph is missing \"") + key + "\"");
  }
  GraphDocument doc;
  const json& n = j.at("vertices");
  if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<long long>() >= 0)) {
    throw std::invalid_argument("\"vertices\" must be a nonnegative integer");
  }
  doc.raw.n = n.get<std::size_t>();
  if (!j.at("measure").is_array()) throw std::invalid_argument("\"measure\" must be an array");
  for (const json& m : j.at("measure")) {
    if (!m.is_number()) throw std::invalid_argument("\"measure\" entries must be numbers");
    doc.raw.measure.push_back(m.get<double>());
  }
  if (!j.at("edges").is_array()) throw std::invalid_argument("\"edges\" must be an array");
  std::vector<double> lengths;
  bool all_lengths = true;
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || (e.size() != 3 && e.size() != 4) || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number()) {
      throw std::invalid_argument("edge entries must be [x, y, b] or [x, y, b, w]");
    }
    if (e[0].get<long long>() < 0 || e[1].get<long long>() < 0) {
      throw std::invalid_argument("edge endpoints must be nonnegative");
    }
    doc.raw.edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>(), e[2].get<double>()});
    if (e.size() == 4) {
      if (!e[3].is_number()) throw std::invalid_argument("edge length must be a number");
      lengths.push_back(e[3].get<double>());
    } else {
      all_lengths = false;
    }
  }
  if (all_lengths && !doc.raw.edges.empty()) doc.lengths = std::move(lengths);
  if (j.contains("interior")) {
    if (!j.at("interior").is_array()) throw std::invalid_argument("\"interior\" must be an array");
    for (const json& b : j.at("interior")) {
      if (!b.is_boolean()) throw std::invalid_argument("\"interior\" entries must be booleans");
      doc.raw.interior.push_back(b.get<bool>());
    }
  }
  return doc;
}

EdgeWeighting weighting_from_document(const WeightedGraph& g, const GraphDocument& doc) {
  if (!doc.lengths) throw std::invalid_argument("graph document carries no edge lengths");
  std::vector<double> w(g.num_edges(), -1.0);
  for (std::size_t i = 0; i < doc.raw.edges.size(); ++i) {
    const Edge& e = doc.raw.edges[i];
    if (e.x >= g.num_vertices() || e.y >= g.num_vertices()) continue;
    const std::size_t idx = g.edge_index(e.x, e.y);
    if (idx != WeightedGraph::npos) w[idx] = (*doc.lengths)[i];
  }
  return EdgeWeighting(g, std::move(w));
}

json graph_to_json(const WeightedGraph& g, const EdgeWeighting* w) {
  json edges = json::array();
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    json entry = {e.x, e.y, e.weight};
    if (w) entry.push_back(w->on_edge(i));
    edges.push_back(std::move(entry));
  }
  json interior = json::array();
  for (bool b : g.interior_mask()) interior.push_back(b);
  return {{"vertices", g.num_vertices()},
          {"measure", g.measures()},
          {"edges", std::move(edges)},
          {"interior", std::move(interior)}};
}

}  // namespace phardy
