#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lieflow/report.hpp"
#include "lieflow/transport.hpp"

namespace lieflow {

/// A user-defined field: one expression string per component, either in
/// reference coordinates (evaluated at X and carried along the flow with the
/// rule of its variance) or in current coordinates (evaluated at (t, x)
/// directly).  Flow parameters are available inside the expressions by name.
struct FieldConfig {
  std::string name;
  Variance variance = Variance::scalar;
  bool reference_frame = true;
  std::vector<std::string> components;
  bool expect_transported = true;
};

/// Catalog flow (name + params) or, when `velocity` holds three expression
/// strings, a flow integrated from that velocity field along trajectories.
struct FlowConfig {
  std::string name = "zero";
  std::map<std::string, double> params;
  std::vector<std::string> velocity;
  double step = 1e-2;
};

struct SamplingConfig {
  int points = 100;
  std::uint64_t seed = 42;
  std::vector<double> times = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::array<double, 3> box_lo = {-1.0, -1.0, -1.0};
  std::array<double, 3> box_hi = {1.0, 1.0, 1.0};
};

struct OutputConfig {
  std::string directory = "reports";
  bool write_json = true;
  bool write_csv = true;
};

struct RunConfig {
  FlowConfig flow;
  std::vector<FieldConfig> fields;
  std::vector<std::string> checks;          // empty: every registered check
  std::map<std::string, double> tolerances;  // per-check overrides
  SamplingConfig sampling;
  OutputConfig output;
  double tolerance_scale = 1.0;
};

/// Parses a configuration document (JSON, // and /* */ comments allowed).
/// Every validation failure raises ConfigError with the offending key;
/// unknown flow names list the catalog, unknown check names list the
/// registry.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

struct CheckInfo {
  std::string name;
  std::string theorem_tag;
  double default_tolerance;
  std::string summary;
};

/// Registered checks in execution order.  "transport-all-variances" is
/// accepted in RunConfig::checks as an alias for the six transport checks.
const std::vector<CheckInfo>& check_registry();

/// Runs the configured checks serially, writes one report file per check
/// and format under output.directory, and prints a one-line verdict per
/// check to `console` when given.  Timing appears only on the console:
/// report files depend exclusively on config + seed and are byte-identical
/// across reruns.  Per-check evaluation errors mark that check failed (see
/// CheckReport::note) and the suite continues.
std::vector<CheckReport> run_suite(const RunConfig& config, std::ostream* console = nullptr);

bool all_passed(std::span<const CheckReport> reports);

/// Serialized forms of one report; emit_series writes <name>.<format> under
/// `directory` and returns the path.  CSV columns: t, x1, x2, x3, the
/// report's component columns, magnitude.  JSON mirrors CheckReport.
std::string render_json(const CheckReport& report);
std::string render_csv(const CheckReport& report);
std::filesystem::path emit_series(const CheckReport& report,
                                  const std::filesystem::path& directory,
                                  std::string_view format);

/// Flows with their parameters and closed-form availability, built-in field
/// suites, and checks with their theorem tags.  `filter` keeps entries whose
/// name contains it (empty keeps everything); `as_json` renders a JSON array.
std::string list_catalog(bool as_json, std::string_view filter = {});

}  // namespace lieflow
