#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lieflow/errors.hpp"
#include "lieflow/harness.hpp"

using namespace lieflow;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("lieflow-test-" + tag);
  fs::remove_all(dir);
  return dir;
}

RunConfig minimal_config(const std::string& flow, const std::vector<std::string>& checks,
                         const std::string& out_dir) {
  RunConfig cfg;
  cfg.flow.name = flow;
  cfg.checks = checks;
  cfg.sampling.points = 20;
  cfg.output.directory = out_dir;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing applies defaults and reads comments") {
  const RunConfig cfg = parse_run_config(R"({
    // comments are part of the dialect
    "flow": {"name": "rotation", "params": {"omega": 2.0}},
    "checks": ["kelvin", "flux"],
    "sampling": {"points": 12, "seed": 7, "times": [0.0, 1.0]},
    /* block comments too */
    "output": {"directory": "out", "formats": ["json"]}
  })");
  CHECK(cfg.flow.name == "rotation");
  CHECK(cfg.flow.params.at("omega") == 2.0);
  CHECK(cfg.checks == std::vector<std::string>{"kelvin", "flux"});
  CHECK(cfg.sampling.points == 12);
  CHECK(cfg.sampling.seed == 7);
  CHECK(cfg.sampling.times == std::vector<double>{0.0, 1.0});
  CHECK(cfg.output.directory == "out");
  CHECK_FALSE(cfg.output.write_csv);
  CHECK(cfg.output.write_json);       // untouched default
  CHECK(cfg.tolerance_scale == 1.0);  // untouched default
  CHECK(cfg.fields.empty());

  const RunConfig empty = parse_run_config("{}");
  CHECK(empty.flow.name == "zero");
  CHECK(empty.sampling.points == 100);
  CHECK(empty.sampling.seed == 42);
  CHECK(empty.sampling.times.size() == 5);
}

TEST_CASE("config parsing rejects malformed documents with precise messages") {
  CHECK_THROWS_AS(parse_run_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("[1,2,3]"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"floww": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"flow": {"nam": "zero"}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"sampling": {"points": -4}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"sampling": {"times": []}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"sampling": {"box": [[0,1],[0,1]]}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"sampling": {"box": [[0,0],[0,1],[0,1]]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"tolerance_scale": 0.0})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"tolerance_scale": -1.5})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"output": {"formats": ["yaml"]}})"), ConfigError);

  const RunConfig boxed =
      parse_run_config(R"({"sampling": {"box": [[-2,2],[-1,1],[0,1]]}, "tolerance_scale": 2.0})");
  CHECK(boxed.sampling.box_lo[0] == -2.0);
  CHECK(boxed.sampling.box_hi[2] == 1.0);
  CHECK(boxed.tolerance_scale == 2.0);

  try {
    parse_run_config(R"({"flow": {"name": "vortexx"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("vortexx") != std::string::npos);
    CHECK(what.find("rotation") != std::string::npos);
    CHECK(what.find("expansion") != std::string::npos);
  }

  try {
    parse_run_config(R"({"checks": ["kelvinn"]})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("kelvinn") != std::string::npos);
    CHECK(what.find("kelvin") != std::string::npos);
    CHECK(what.find("transport-all-variances") != std::string::npos);
  }
}

TEST_CASE("field configs are validated component by component") {
  const char* good = R"({
    "fields": [
      {"name": "probe", "variance": "vector", "frame": "reference",
       "components": ["x2", "-x1", "1"], "expect_transported": true}
    ]
  })";
  const RunConfig cfg = parse_run_config(good);
  REQUIRE(cfg.fields.size() == 1);
  CHECK(cfg.fields[0].variance == Variance::vector);
  CHECK(cfg.fields[0].reference_frame);

  CHECK_THROWS_AS(parse_run_config(R"({"fields": [{"name": "p", "variance": "vector",
    "components": ["x1"]}]})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"fields": [{"name": "p", "variance": "spinor",
    "components": ["x1"]}]})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"fields": [{"name": "p", "variance": "scalar",
    "frame": "sideways", "components": ["x1"]}]})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"fields": [
      {"name": "p", "variance": "scalar", "components": ["x1"]},
      {"name": "p", "variance": "scalar", "components": ["x2"]}]})"),
                  ConfigError);

  // expression errors surface with their offset
  try {
    parse_run_config(R"({"fields": [{"name": "p", "variance": "scalar",
      "components": ["x1*(2+"]}]})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("p") != std::string::npos);
    CHECK(what.find("6") != std::string::npos);
  }

  // flow parameters are visible inside field expressions
  CHECK_NOTHROW(parse_run_config(R"({
    "flow": {"name": "shear", "params": {"gamma": 2.0}},
    "fields": [{"name": "p", "variance": "scalar", "components": ["gamma*x2"]}]
  })"));
  CHECK_THROWS_AS(parse_run_config(R"({
    "fields": [{"name": "p", "variance": "scalar", "components": ["gamma*x2"]}]
  })"),
                  ConfigError);
}

TEST_CASE("the registry names every check once with a theorem tag") {
  const auto& registry = check_registry();
  CHECK(registry.size() >= 10);
  std::vector<std::string> names;
  for (const CheckInfo& info : registry) {
    CHECK_FALSE(info.name.empty());
    CHECK_FALSE(info.theorem_tag.empty());
    CHECK_FALSE(info.summary.empty());
    CHECK(info.default_tolerance >= 0.0);
    names.push_back(info.name);
  }
  std::sort(names.begin(), names.end());
  CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
  CHECK(std::find(names.begin(), names.end(), "kelvin") != names.end());
  CHECK(std::find(names.begin(), names.end(), "transport-scalar") != names.end());
  CHECK(std::find(names.begin(), names.end(), "induction") != names.end());
}

TEST_CASE("a single-check run produces a passing report") {
  const fs::path dir = fresh_dir("kelvin");
  RunConfig cfg = minimal_config("rotation", {"kelvin"}, dir.string());
  const std::vector<CheckReport> reports = run_suite(cfg);
  REQUIRE(reports.size() == 1);
  const CheckReport& r = reports[0];
  CHECK(r.name == "kelvin");
  CHECK(r.theorem_tag == "kelvin-circulation");
  CHECK(r.flow == "rotation");
  CHECK(r.pass);
  CHECK(r.max_residual <= r.tolerance);
  CHECK(r.max_residual < 1e-7);
  CHECK(all_passed(reports));
  CHECK(fs::exists(dir / "kelvin.json"));
  CHECK(fs::exists(dir / "kelvin.csv"));
  fs::remove_all(dir);
}

TEST_CASE("the transport alias expands to the six variance checks") {
  const fs::path dir = fresh_dir("alias");
  RunConfig cfg = minimal_config("shear", {"helmholtz", "mass", "transport-all-variances"},
                                 dir.string());
  cfg.sampling.points = 10;
  const std::vector<CheckReport> reports = run_suite(cfg);
  CHECK(reports.size() == 8);
  CHECK(all_passed(reports));
  int transports = 0;
  for (const CheckReport& r : reports)
    if (r.name.rfind("transport-", 0) == 0) ++transports;
  CHECK(transports == 6);
  fs::remove_all(dir);
}

TEST_CASE("report files are byte-identical across reruns") {
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  RunConfig cfg = minimal_config("cascade", {"kelvin", "mass", "commutation"}, dir1.string());
  cfg.sampling.seed = 99;
  const std::vector<CheckReport> first = run_suite(cfg);
  cfg.output.directory = dir2.string();
  const std::vector<CheckReport> second = run_suite(cfg);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(render_json(first[i]) == render_json(second[i]));
    CHECK(render_csv(first[i]) == render_csv(second[i]));
    CHECK(slurp(dir1 / (first[i].name + ".json")) == slurp(dir2 / (first[i].name + ".json")));
    CHECK(slurp(dir1 / (first[i].name + ".csv")) == slurp(dir2 / (first[i].name + ".csv")));
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("changing the seed moves the samples but not the verdict") {
  const fs::path dir = fresh_dir("seeds");
  RunConfig cfg = minimal_config("rotation", {"transport-vector"}, dir.string());
  cfg.sampling.seed = 1;
  const std::string a = render_json(run_suite(cfg)[0]);
  cfg.sampling.seed = 2;
  const CheckReport rb = run_suite(cfg)[0];
  CHECK(render_json(rb) != a);
  CHECK(rb.pass);
  fs::remove_all(dir);
}

TEST_CASE("a field that falsely claims transport fails its check") {
  const fs::path dir = fresh_dir("liar");
  RunConfig cfg = minimal_config("shear", {"transport-scalar"}, dir.string());
  FieldConfig liar;
  liar.name = "frozen-x1";
  liar.variance = Variance::scalar;
  liar.reference_frame = false;  // evaluated at (t, x): a static field
  liar.components = {"x1"};
  liar.expect_transported = true;
  cfg.fields.push_back(liar);
  const std::vector<CheckReport> reports = run_suite(cfg);
  REQUIRE(reports.size() == 1);
  CHECK_FALSE(reports[0].pass);
  CHECK_FALSE(all_passed(reports));
  CHECK(reports[0].max_residual > 0.1);
  fs::remove_all(dir);
}

TEST_CASE("rendered JSON round-trips through a parser") {
  const fs::path dir = fresh_dir("roundtrip");
  RunConfig cfg = minimal_config("expansion", {"induction"}, dir.string());
  const CheckReport r = run_suite(cfg)[0];
  const nlohmann::json j = nlohmann::json::parse(render_json(r));
  CHECK(j.at("name").get<std::string>() == "induction");
  CHECK(j.at("theorem_tag").get<std::string>() == "faraday-frozen-field");
  CHECK(j.at("pass").get<bool>() == r.pass);
  CHECK(j.at("tolerance").get<double>() == r.tolerance);
  CHECK(j.at("seed").get<std::uint64_t>() == r.seed);
  CHECK(j.at("samples").is_array());
  CHECK(j.at("samples").size() == r.samples.size());
  CHECK_FALSE(j.contains("runtime_ms"));
  fs::remove_all(dir);
}

TEST_CASE("CSV has a fixed header and one row per sample") {
  CheckReport r;
  r.name = "demo";
  r.component_names = {"a", "b"};
  SampleResidual s;
  s.t = 0.5;
  s.x = {1.0, 2.0, 3.0};
  s.components = {0.25, -0.125};
  s.magnitude = 0.25;
  r.samples.push_back(s);
  r.finalize();
  const std::string csv = render_csv(r);
  CHECK(csv == "t,x1,x2,x3,a,b,magnitude\n0.5,1,2,3,0.25,-0.125,0.25\n");

  r.samples.clear();
  r.finalize();
  CHECK(render_csv(r) == "t,x1,x2,x3,a,b,magnitude\n");
}

TEST_CASE("expression-defined flows run through the trajectory integrator") {
  const fs::path dir = fresh_dir("exprflow");
  RunConfig cfg;
  cfg.flow.name = "drift";
  cfg.flow.velocity = {"sin(x2)", "0", "0"};
  cfg.flow.step = 1e-2;
  cfg.checks = {"transport-scalar", "kelvin"};
  cfg.sampling.points = 8;
  cfg.sampling.times = {0.0, 0.5, 1.0};
  cfg.output.directory = dir.string();
  const std::vector<CheckReport> reports = run_suite(cfg);
  REQUIRE(reports.size() == 2);
  for (const CheckReport& r : reports) {
    CAPTURE(r.name);
    CAPTURE(r.note);
    CHECK(r.pass);
    CHECK(r.flow == "drift");
  }
  fs::remove_all(dir);
}

TEST_CASE("catalog velocity expressions agree with the compiled flows") {
  const fs::path dir = fresh_dir("crosscheck");
  for (const char* name : {"zero", "rotation", "shear", "expansion", "cascade"}) {
    RunConfig cfg = minimal_config(name, {"flow-crosscheck"}, dir.string());
    const CheckReport r = run_suite(cfg)[0];
    CAPTURE(name);
    CHECK(r.pass);
    CHECK(r.max_residual <= 1e-6);
  }
  fs::remove_all(dir);
}

TEST_CASE("catalog listing covers flows, field suites and checks") {
  const std::string text = list_catalog(false);
  for (const char* expected :
       {"zero", "rotation", "shear", "expansion", "cascade", "kelvin", "induction"})
    CHECK(text.find(expected) != std::string::npos);

  const nlohmann::json j = nlohmann::json::parse(list_catalog(true));
  REQUIRE(j.is_array());
  int flows = 0, checks = 0;
  for (const auto& entry : j) {
    const std::string kind = entry.at("kind").get<std::string>();
    if (kind == "flow") ++flows;
    if (kind == "check") ++checks;
  }
  CHECK(flows == 5);
  CHECK(checks >= 10);

  const nlohmann::json filtered = nlohmann::json::parse(list_catalog(true, "kelvin"));
  CHECK(filtered.size() == 1);
  CHECK(list_catalog(true, "") == list_catalog(true));
}

TEST_CASE("command-line interface round trip") {
  const fs::path dir = fresh_dir("cli");
  fs::create_directories(dir);
  const std::string cli = LIEFLOW_CLI_PATH;
  const auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " > " + (dir / "stdout.txt").string() + " 2> " +
                            (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };

  {
    std::ofstream cfg(dir / "good.json");
    cfg << R"({"flow": {"name": "rotation"}, "checks": ["kelvin"],
               "sampling": {"points": 8},
               "output": {"directory": ")"
        << (dir / "out").string() << R"("}})";
  }
  CHECK(run("check --config " + (dir / "good.json").string()) == 0);
  CHECK(fs::exists(dir / "out" / "kelvin.json"));

  {
    std::ofstream cfg(dir / "bad-flow.json");
    cfg << R"({"flow": {"name": "vortexx"}})";
  }
  CHECK(run("check --config " + (dir / "bad-flow.json").string()) == 2);
  CHECK(slurp(dir / "stderr.txt").find("vortexx") != std::string::npos);

  {
    std::ofstream cfg(dir / "failing.json");
    cfg << R"({"flow": {"name": "shear"}, "checks": ["transport-scalar"],
               "sampling": {"points": 8},
               "fields": [{"name": "liar", "variance": "scalar", "frame": "eulerian",
                           "components": ["x1"], "expect_transported": true}],
               "output": {"directory": ")"
        << (dir / "out2").string() << R"("}})";
  }
  CHECK(run("check --config " + (dir / "failing.json").string()) == 1);

  CHECK(run("list --json") == 0);
  const nlohmann::json listed = nlohmann::json::parse(slurp(dir / "stdout.txt"));
  CHECK(listed.is_array());

  CHECK(run("report " + (dir / "out" / "kelvin.json").string()) == 0);
  CHECK(slurp(dir / "stdout.txt").find("kelvin") != std::string::npos);
  fs::remove_all(dir);
}
