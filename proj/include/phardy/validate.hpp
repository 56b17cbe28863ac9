#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "phardy/graph.hpp"

namespace phardy {

// Graph description as read from input, before any invariant is enforced.
// Edges may be listed in either orientation; a pair given in both
// orientations must carry equal weights.
struct RawGraph {
  std::size_t n = 0;
  std::vector<double> measure;
  std::vector<Edge> edges;
  std::vector<bool> interior;  // empty: all interior
};

enum class FindingKind {
  asymmetric_weight,
  duplicate_pair,
  nonpositive_weight,
  nonpositive_measure,
  self_loop,
  missing_vertex,
  interior_incomplete,
  shape_mismatch,
};

const char* to_string(FindingKind kind);

struct Finding {
  FindingKind kind;
  std::vector<VertexId> vertices;  // the offending vertex or pair
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const { return findings.empty(); }
  std::size_t count(FindingKind kind) const;
};

ValidationReport validate(const RawGraph& raw);

// Re-check of the vertex measures of an already constructed graph.
ValidationReport validate(const WeightedGraph& g);

class GraphValidationError : public std::invalid_argument {
 public:
  explicit GraphValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Builds the graph, merging mirrored pairs. Throws GraphValidationError when
// validate(raw) has findings. Edges to vertices outside [0, n) are dropped
// only when neither endpoint is interior.
WeightedGraph build_graph(const RawGraph& raw);

}  // namespace phardy
