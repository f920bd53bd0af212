#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lieflow/errors.hpp"
#include "lieflow/harness.hpp"

namespace {

lieflow::CheckReport report_from_json(const nlohmann::json& j) {
  lieflow::CheckReport r;
  r.name = j.at("name").get<std::string>();
  r.theorem_tag = j.at("theorem_tag").get<std::string>();
  r.flow = j.at("flow").get<std::string>();
  for (const auto& [k, v] : j.at("flow_params").items())
    r.flow_params[k] = v.get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.tolerance = j.at("tolerance").get<double>();
  r.max_residual = j.at("max_residual").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.note = j.at("note").get<std::string>();
  r.component_names = j.at("component_names").get<std::vector<std::string>>();
  for (const auto& row : j.at("samples")) {
    lieflow::SampleResidual s;
    s.t = row.at("t").get<double>();
    const auto& x = row.at("x");
    s.x = {x.at(0).get<double>(), x.at(1).get<double>(), x.at(2).get<double>()};
    s.components = row.at("components").get<std::vector<double>>();
    s.magnitude = row.at("magnitude").get<double>();
    r.samples.push_back(std::move(s));
  }
  return r;
}

int run_check(const std::string& config_path, const std::string& out_dir,
              const std::string& format, bool seed_set, std::uint64_t seed,
              double tolerance_scale) {
  lieflow::RunConfig config = lieflow::load_run_config(config_path);
  if (!out_dir.empty()) config.output.directory = out_dir;
  if (!format.empty()) {
    config.output.write_json = format == "json";
    config.output.write_csv = format == "csv";
  }
  if (seed_set) config.sampling.seed = seed;
  config.tolerance_scale = tolerance_scale;

  const auto reports = lieflow::run_suite(config, &std::cout);
  int failed = 0;
  for (const auto& r : reports) failed += r.pass ? 0 : 1;
  std::cout << reports.size() << " checks: " << (reports.size() - failed) << " passed, "
            << failed << " failed";
  if (config.output.write_json || config.output.write_csv)
    std::cout << "; reports in " << config.output.directory;
  std::cout << '\n';
  return failed == 0 ? 0 : 1;
}

int run_report(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lieflow::ConfigError("cannot read report file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw lieflow::ConfigError("'" + path + "' is not a JSON report: " + e.what());
  }
  lieflow::CheckReport r;
  try {
    r = report_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw lieflow::ConfigError("'" + path + "' is missing report fields: " + e.what());
  }

  if (format == "csv") {
    std::cout << lieflow::render_csv(r);
  } else if (format == "json") {
    std::cout << lieflow::render_json(r);
  } else {
    std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << " (" << r.theorem_tag
              << ")\n"
              << "  flow: " << r.flow;
    for (const auto& [k, v] : r.flow_params) std::cout << ' ' << k << '=' << v;
    std::cout << "\n  seed: " << r.seed << "\n  max residual: " << r.max_residual
              << " against tolerance " << r.tolerance << "\n  samples: "
              << r.samples.size() << '\n';
    if (!r.note.empty()) std::cout << "  note: " << r.note << '\n';
  }
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of convected tensor transport"};
  app.require_subcommand(0, 1);

  bool list_flag = false;
  app.add_flag("--list", list_flag, "list flows, field suites and checks, then exit");

  auto* list_cmd = app.add_subcommand("list", "show flows, field suites and checks");
  bool list_json = false;
  std::string list_filter;
  list_cmd->add_flag("--json", list_json, "emit a JSON array instead of text");
  list_cmd->add_option("--filter", list_filter, "keep entries whose name contains this");

  auto* check_cmd = app.add_subcommand("check", "run configured checks, write reports");
  std::string config_path, out_dir, format;
  std::uint64_t seed = 0;
  double tolerance_scale = 1.0;
  check_cmd->add_option("--config", config_path, "configuration file")->required();
  check_cmd->add_option("--out", out_dir, "report directory (overrides the config)");
  check_cmd->add_option("--format", format, "write only this format")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = check_cmd->add_option("--seed", seed, "overrides sampling.seed");
  check_cmd->add_option("--tolerance-scale", tolerance_scale,
                        "multiplies every tolerance");

  auto* report_cmd = app.add_subcommand("report", "re-render a written JSON report");
  std::string report_path, report_format;
  report_cmd->add_option("path", report_path, "report JSON file")->required();
  report_cmd->add_option("--format", report_format, "csv or json (default: summary)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed())
      std::cout << lieflow::list_catalog(list_json, list_filter);
    else if (check_cmd->parsed())
      return run_check(config_path, out_dir, format, seed_opt->count() > 0, seed,
                       tolerance_scale);
    else if (report_cmd->parsed())
      return run_report(report_path, report_format);
    else if (list_flag)
      std::cout << lieflow::list_catalog(false, "");
    else
      std::cout << app.help();
  } catch (const lieflow::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
