#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "phardy/hardy.hpp"
#include "phardy/metric.hpp"
#include "phardy/optimizer.hpp"
#include "phardy/symtree.hpp"
#include "phardy/tree_hardy.hpp"
#include "phardy/validate.hpp"

namespace phardy {

// Finite values as JSON numbers; inf and NaN as the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);

// Shortest decimal string that parses back to v, '.' as separator.
std::string format_double(double v);

nlohmann::json to_json(const Margin& m);
nlohmann::json to_json(const Interval& i);
nlohmann::json to_json(const TailBound& b);
nlohmann::json to_json(const BoundaryClassification& c);
nlohmann::json to_json(const SuperharmonicCertificate& c);
nlohmann::json to_json(const TreeCertificateScan& s);
nlohmann::json to_json(const HardyReport& r);
nlohmann::json to_json(const HarrisNorm& h);
nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const IntrinsicReport& r);
nlohmann::json to_json(const OptimizerResult& r);

struct SweepRow {
  std::string instance_id;
  double p = 0.0;
  std::string check;
  double margin = 0.0;
  double scale = 1.0;
  bool verdict = true;
};

// Header instance_id,p,check,margin,scale,verdict and one line per row.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace phardy
