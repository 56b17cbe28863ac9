#include "phardy/report_json.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace phardy {

using nlohmann::json;

namespace {

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(json_number(x));
  return out;
}

}  // namespace

json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(const Margin& m) {
  return {{"lhs", json_number(m.lhs)},
          {"rhs", json_number(m.rhs)},
          {"margin", json_number(m.value())},
          {"scale", json_number(m.scale())},
          {"holds", m.holds()}};
}

json to_json(const Interval& i) { return {{"lo", json_number(i.lo)}, {"hi", json_number(i.hi)}}; }

json to_json(const TailBound& b) {
  return {{"n0", b.n0}, {"lower", json_number(b.lower)}, {"upper", json_number(b.upper)}};
}

json to_json(const BoundaryClassification& c) {
  json j = {{"kind", to_string(c.kind)}, {"reason", c.reason}, {"decay", json_number(c.decay)}};
  if (c.cutoff) j["cutoff"] = to_json(*c.cutoff);
  return j;
}

json to_json(const SuperharmonicCertificate& c) {
  return {{"lambda", json_number(c.lambda)}, {"exceptional", c.exceptional},
          {"margin", json_number(c.margin)}, {"scan", {c.scan_lo, c.scan_hi}},
          {"tail_certified", c.tail_certified}, {"valid", c.valid()},
          {"target", c.target},           {"note", c.note}};
}

json to_json(const TreeCertificateScan& s) {
  return {{"certificate", to_json(s.cert)},
          {"n0", s.n0},
          {"n0_doubled_horizon", s.n0_doubled},
          {"stable", s.stable},
          {"tail_log_bound", json_number(s.tail_log_bound)}};
}

json to_json(const HardyReport& r) {
  json first = json::array(), second = json::array();
  for (const Margin& m : r.first) first.push_back(to_json(m));
  for (const Margin& m : r.second) second.push_back(to_json(m));
  return {{"p", json_number(r.p)},
          {"lambda", json_number(r.lambda)},
          {"constants", {{"c1", json_number(r.c1)}, {"c2", json_number(r.c2)}, {"c3", json_number(r.c3)}}},
          {"edge_ratio", json_number(r.edge_ratio)},
          {"first", first},
          {"second", second},
          {"min_relative_margin_first", json_number(r.min_first)},
          {"min_relative_margin_second", json_number(r.min_second)},
          {"verdict", r.verdict},
          {"note", r.note}};
}

json to_json(const HarrisNorm& h) {
  return {{"partial", json_number(h.partial)},
          {"log_partial", json_number(h.log_partial)},
          {"tail", to_string(h.tail)},
          {"partial_over_h", json_number(h.partial_over_h)},
          {"log_partial_over_h", json_number(h.log_partial_over_h)},
          {"tail_over_h", to_string(h.tail_over_h)},
          {"reason", h.reason}};
}

json to_json(const ValidationReport& r) {
  json findings = json::array();
  for (const Finding& f : r.findings) {
    findings.push_back({{"kind", to_string(f.kind)}, {"vertices", f.vertices}, {"message", f.message}});
  }
  return {{"ok", r.ok()}, {"findings", findings}};
}

json to_json(const IntrinsicReport& r) {
  return {{"p", json_number(r.p)},
          {"verdict", r.verdict},
          {"min_interior_slack", json_number(r.min_interior_slack)},
          {"slack", numbers(r.slack)}};
}

json to_json(const OptimizerResult& r) {
  json traj = json::array();
  for (const auto& t : r.trajectories) traj.push_back(numbers(t));
  return {{"estimate", json_number(r.estimate)},
          {"minimizer", numbers(std::vector<double>(r.minimizer.values().begin(), r.minimizer.values().end()))},
          {"history", numbers(r.history)},
          {"trajectories", traj},
          {"best_restart", r.best_restart},
          {"rejected_starts", r.rejected_starts}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "instance_id,p,check,margin,scale,verdict\n";
  for (const SweepRow& r : rows) {
    out << r.instance_id << ',' << format_double(r.p) << ',' << r.check << ','
        << format_double(r.margin) << ',' << format_double(r.scale) << ','
        << (r.verdict ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace phardy
