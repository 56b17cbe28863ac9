#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "phardy/cli/run.hpp"

namespace {

nlohmann::json read_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("spec " + path + " is not valid JSON: " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-Sobolev calculus, Hardy inequalities and boundary distances on weighted graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("phardy ") + phardy::cli::kToolVersion);

  std::string spec_path, out_dir, format = "json";
  std::uint64_t seed = 0;
  std::size_t cap = 1000000;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "run spec (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "seed for every random draw (overrides the spec)");
    sub->add_option("--cap-vertices", cap, "largest instance to build")->capture_default_str();
  };
  CLI::App* validate = app.add_subcommand("validate", "check a spec and its instance");
  add_common(validate);
  CLI::App* describe = app.add_subcommand("describe", "print instance statistics");
  add_common(describe);
  CLI::App* run = app.add_subcommand("run", "run the spec's task and write reports");
  add_common(run);
  run->add_option("--out", out_dir, "directory for report.json / rows.csv (stdout when absent)");
  run->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const nlohmann::json spec = read_spec(spec_path);
    phardy::cli::RunOptions opt;
    opt.cap_vertices = cap;
    for (CLI::App* sub : {validate, describe, run}) {
      if (sub->parsed() && sub->count("--seed") > 0) opt.seed = seed;
    }

    if (validate->parsed()) {
      const phardy::cli::SpecCheck check = phardy::cli::validate_spec(spec, opt);
      for (const std::string& m : check.messages) std::cout << m << '\n';
      std::cout << (check.ok ? "ok" : "invalid") << '\n';
      return check.ok ? 0 : 1;
    }
    if (describe->parsed()) {
      std::cout << phardy::cli::describe(spec, opt);
      return 0;
    }

    const phardy::cli::RunOutcome outcome = phardy::cli::run(spec, opt);
    const bool want_json = format == "json" || format == "both";
    const bool want_csv = format == "csv" || format == "both";
    if (out_dir.empty()) {
      if (want_json) std::cout << outcome.report.dump(2) << '\n';
      if (want_csv) std::cout << phardy::sweep_csv(outcome.rows);
    } else {
      std::filesystem::create_directories(out_dir);
      if (want_json) write_file(std::filesystem::path(out_dir) / "report.json", outcome.report.dump(2) + "\n");
      if (want_csv) write_file(std::filesystem::path(out_dir) / "rows.csv", phardy::sweep_csv(outcome.rows));
      std::cerr << "verdict " << (outcome.verdict ? "true" : "false") << '\n';
    }
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
