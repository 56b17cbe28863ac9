#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phardy/report_json.hpp"

namespace phardy::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the spec's "seed"
  std::size_t cap_vertices = 1000000;
};

struct RunOutcome {
  nlohmann::json report;  // spec echo, result, verdict, version, timing
  std::vector<SweepRow> rows;
  bool verdict = false;
  // 0 verdict true, 2 verdict false, 1 error (validate findings count as errors)
  int exit_code = 1;
};

// Throws std::invalid_argument on schema violations and std::length_error
// when an instance exceeds the vertex cap.
RunOutcome run(const nlohmann::json& spec, const RunOptions& options = {});

// Instance statistics without running the task.
std::string describe(const nlohmann::json& spec, const RunOptions& options = {});

struct SpecCheck {
  bool ok = true;
  std::vector<std::string> messages;
};

// Schema check of the spec plus graph validation of explicit instances.
SpecCheck validate_spec(const nlohmann::json& spec, const RunOptions& options = {});

}  // namespace phardy::cli
