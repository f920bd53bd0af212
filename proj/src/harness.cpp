#include "lieflow/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "lieflow/conservation.hpp"
#include "lieflow/errors.hpp"
#include "lieflow/fieldexpr.hpp"
#include "lieflow/flow_map.hpp"
#include "lieflow/kinematics.hpp"
#include "lieflow/lie_calculus.hpp"
#include "lieflow/material_integrals.hpp"
#include "lieflow/transport.hpp"

namespace lieflow {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

// ---------------------------------------------------------------------------
// configuration parsing

using json = nlohmann::json;

void require_keys(const json& obj, const char* section,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }))
      throw ConfigError(std::string(section) + ": unknown key '" + key + "'");
  }
}

double require_finite(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + ": value is not finite");
  return d;
}

std::vector<std::string> param_name_list(const std::map<std::string, double>& params) {
  std::vector<std::string> names;
  for (const auto& [k, _] : params) names.push_back(k);
  return names;
}

Expr parse_config_expr(const std::string& src, const std::vector<std::string>& params,
                       const std::string& where) {
  ParseResult r = parse(src, params);
  if (!parse_ok(r)) {
    const ParseError& e = parse_error(r);
    throw ConfigError(where + ": " + e.message + " at offset " +
                      std::to_string(e.position) + " in '" + src + "'");
  }
  return parsed(r);
}

FlowConfig parse_flow_section(const json& j) {
  FlowConfig flow;
  if (!j.is_object()) throw ConfigError("flow: expected an object");
  require_keys(j, "flow", {"name", "params", "velocity", "step"});
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ConfigError("flow.name: expected a string");
    flow.name = j["name"].get<std::string>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigError("flow.params: expected an object");
    for (const auto& [k, v] : j["params"].items())
      flow.params[k] = require_finite(v, "flow.params." + k);
  }
  if (j.contains("velocity")) {
    if (!j["velocity"].is_array() || j["velocity"].size() != 3)
      throw ConfigError("flow.velocity: expected three expression strings");
    for (const auto& c : j["velocity"]) {
      if (!c.is_string()) throw ConfigError("flow.velocity: expected three expression strings");
      flow.velocity.push_back(c.get<std::string>());
    }
  }
  if (j.contains("step")) {
    flow.step = require_finite(j["step"], "flow.step");
    if (flow.step <= 0) throw ConfigError("flow.step: must be positive");
  }
  return flow;
}

FieldConfig parse_field_entry(const json& j, std::size_t index,
                              const std::vector<std::string>& params) {
  const std::string where = "fields[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  require_keys(j, where.c_str(),
               {"name", "variance", "frame", "components", "expect_transported"});
  FieldConfig f;
  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
    throw ConfigError(where + ": needs a non-empty name");
  f.name = j["name"].get<std::string>();
  if (!j.contains("variance") || !j["variance"].is_string())
    throw ConfigError(where + ": needs a variance tag");
  try {
    f.variance = variance_from_string(j["variance"].get<std::string>());
  } catch (const VarianceError& e) {
    throw ConfigError(where + ".variance: " + e.what());
  }
  if (j.contains("frame")) {
    const std::string frame = j["frame"].is_string() ? j["frame"].get<std::string>() : "";
    if (frame == "reference")
      f.reference_frame = true;
    else if (frame == "eulerian")
      f.reference_frame = false;
    else
      throw ConfigError(where + ".frame: expected 'reference' or 'eulerian'");
  }
  f.expect_transported = f.reference_frame;
  if (j.contains("expect_transported")) {
    if (!j["expect_transported"].is_boolean())
      throw ConfigError(where + ".expect_transported: expected a boolean");
    f.expect_transported = j["expect_transported"].get<bool>();
  }
  if (!j.contains("components") || !j["components"].is_array())
    throw ConfigError(where + ": needs a components array");
  for (const auto& c : j["components"]) {
    if (!c.is_string()) throw ConfigError(where + ".components: expected strings");
    f.components.push_back(c.get<std::string>());
  }
  const std::size_t want = component_count(f.variance);
  if (f.components.size() != want)
    throw ConfigError(where + ": variance '" +
                      std::string(to_string(f.variance)) + "' needs " +
                      std::to_string(want) + " components, got " +
                      std::to_string(f.components.size()));
  for (std::size_t i = 0; i < f.components.size(); ++i)
    parse_config_expr(f.components[i], params,
                      where + ".components[" + std::to_string(i) + "]");
  return f;
}

std::string known_check_names() {
  std::string out;
  for (const CheckInfo& c : check_registry()) {
    if (!out.empty()) out += ", ";
    out += c.name;
  }
  out += ", transport-all-variances";
  return out;
}

bool is_known_check(const std::string& name) {
  if (name == "transport-all-variances") return true;
  for (const CheckInfo& c : check_registry())
    if (c.name == name) return true;
  return false;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  require_keys(j, "config",
               {"flow", "fields", "checks", "tolerances", "sampling", "output",
                "tolerance_scale"});

  RunConfig config;
  if (j.contains("flow")) config.flow = parse_flow_section(j["flow"]);

  const std::vector<std::string> params = param_name_list(config.flow.params);
  if (config.flow.velocity.empty()) {
    make_catalog_flow(config.flow.name, config.flow.params);  // unknown name rejected here
  } else {
    for (std::size_t i = 0; i < 3; ++i)
      parse_config_expr(config.flow.velocity[i], params,
                        "flow.velocity[" + std::to_string(i) + "]");
  }

  if (j.contains("fields")) {
    if (!j["fields"].is_array()) throw ConfigError("fields: expected an array");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < j["fields"].size(); ++i) {
      FieldConfig f = parse_field_entry(j["fields"][i], i, params);
      if (!seen.insert(f.name).second)
        throw ConfigError("fields: duplicate name '" + f.name + "'");
      config.fields.push_back(std::move(f));
    }
  }

  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw ConfigError("checks: expected an array of names");
    for (const auto& c : j["checks"]) {
      if (!c.is_string()) throw ConfigError("checks: expected an array of names");
      const std::string name = c.get<std::string>();
      if (!is_known_check(name))
        throw ConfigError("checks: unknown check '" + name + "'; known checks: " +
                          known_check_names());
      config.checks.push_back(name);
    }
  }

  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ConfigError("tolerances: expected an object");
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (!is_known_check(k) || k == "transport-all-variances")
        throw ConfigError("tolerances: unknown check '" + k + "'; known checks: " +
                          known_check_names());
      config.tolerances[k] = require_finite(v, "tolerances." + k);
    }
  }

  if (j.contains("sampling")) {
    const json& s = j["sampling"];
    if (!s.is_object()) throw ConfigError("sampling: expected an object");
    require_keys(s, "sampling", {"points", "seed", "times", "box"});
    if (s.contains("points")) {
      if (!s["points"].is_number_integer() || s["points"].get<long long>() < 1)
        throw ConfigError("sampling.points: expected a positive integer");
      config.sampling.points = static_cast<int>(s["points"].get<long long>());
    }
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned() && !s["seed"].is_number_integer())
        throw ConfigError("sampling.seed: expected a non-negative integer");
      const long long raw = s["seed"].get<long long>();
      if (raw < 0) throw ConfigError("sampling.seed: expected a non-negative integer");
      config.sampling.seed = static_cast<std::uint64_t>(raw);
    }
    if (s.contains("times")) {
      if (!s["times"].is_array() || s["times"].empty())
        throw ConfigError("sampling.times: expected a non-empty array of times");
      config.sampling.times.clear();
      for (const auto& t : s["times"])
        config.sampling.times.push_back(require_finite(t, "sampling.times"));
    }
    if (s.contains("box")) {
      if (!s["box"].is_array() || s["box"].size() != 3)
        throw ConfigError("sampling.box: expected three [lo, hi] pairs");
      for (int axis = 0; axis < 3; ++axis) {
        const json& pair = s["box"][axis];
        if (!pair.is_array() || pair.size() != 2)
          throw ConfigError("sampling.box: expected three [lo, hi] pairs");
        const double lo = require_finite(pair[0], "sampling.box");
        const double hi = require_finite(pair[1], "sampling.box");
        if (!(lo < hi)) throw ConfigError("sampling.box: each pair needs lo < hi");
        config.sampling.box_lo[axis] = lo;
        config.sampling.box_hi[axis] = hi;
      }
    }
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw ConfigError("output: expected an object");
    require_keys(o, "output", {"directory", "formats"});
    if (o.contains("directory")) {
      if (!o["directory"].is_string() || o["directory"].get<std::string>().empty())
        throw ConfigError("output.directory: expected a non-empty string");
      config.output.directory = o["directory"].get<std::string>();
    }
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) throw ConfigError("output.formats: expected an array");
      config.output.write_json = false;
      config.output.write_csv = false;
      for (const auto& f : o["formats"]) {
        const std::string fmt = f.is_string() ? f.get<std::string>() : "";
        if (fmt == "json")
          config.output.write_json = true;
        else if (fmt == "csv")
          config.output.write_csv = true;
        else
          throw ConfigError("output.formats: expected 'json' or 'csv'");
      }
    }
  }

  if (j.contains("tolerance_scale")) {
    const double scale = require_finite(j["tolerance_scale"], "tolerance_scale");
    if (!(scale > 0.0)) throw ConfigError("tolerance_scale: expected a positive number");
    config.tolerance_scale = scale;
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

namespace {

// ---------------------------------------------------------------------------
// instantiation of flows and fields

std::function<double(double, const Vec3&)> compile_component(
    const std::string& src, const std::vector<std::string>& param_names,
    const std::map<std::string, double>& params) {
  Expr e = parse_config_expr(src, param_names, "expression");
  return [e, params](double t, const Vec3& x) { return e.evaluate(t, x, params); };
}

FlowMap build_flow(const FlowConfig& fc) {
  if (fc.velocity.empty()) return make_catalog_flow(fc.name, fc.params);
  const std::vector<std::string> names = param_name_list(fc.params);
  std::array<std::function<double(double, const Vec3&)>, 3> comp = {
      compile_component(fc.velocity[0], names, fc.params),
      compile_component(fc.velocity[1], names, fc.params),
      compile_component(fc.velocity[2], names, fc.params)};
  auto velocity = [comp](double t, const Vec3& x) {
    return Vec3{comp[0](t, x), comp[1](t, x), comp[2](t, x)};
  };
  return make_flow_from_velocity(fc.name.empty() ? "custom" : fc.name, velocity, fc.step);
}

EulerianField build_field(const FieldConfig& fc, const FlowMap& flow) {
  const std::vector<std::string> names = param_name_list(
      std::map<std::string, double>(flow.params.begin(), flow.params.end()));
  const std::map<std::string, double> params(flow.params.begin(), flow.params.end());
  std::vector<std::function<double(double, const Vec3&)>> comp;
  for (const std::string& src : fc.components)
    comp.push_back(compile_component(src, names, params));
  const Variance v = fc.variance;
  if (fc.reference_frame) {
    return transported_field(flow, v, [comp, v](const Vec3& X) {
      std::vector<double> vals;
      vals.reserve(comp.size());
      for (const auto& c : comp) vals.push_back(c(0.0, X));
      return TensorValue::from_components(v, vals);
    });
  }
  return field_from_function(
      v,
      [comp, v](double t, const Vec3& x) {
        std::vector<double> vals;
        vals.reserve(comp.size());
        for (const auto& c : comp) vals.push_back(c(t, x));
        return TensorValue::from_components(v, vals);
      },
      Provenance::expression);
}

// ---------------------------------------------------------------------------
// deterministic sampling

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double in(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 rng_;
};

struct InstantiatedField {
  FieldConfig config;
  EulerianField field;
};

struct SuiteContext {
  const RunConfig* config = nullptr;
  FlowMap flow;
  MassField mass;
  std::vector<InstantiatedField> fields;

  std::uint64_t check_seed(std::size_t registry_index) const {
    return config->sampling.seed ^ (0x9e3779b97f4a7c15ull * (registry_index + 1));
  }

  std::vector<std::pair<double, Vec3>> draw_samples(std::size_t registry_index,
                                                    int count) const {
    Sampler rng(check_seed(registry_index));
    const SamplingConfig& s = config->sampling;
    std::vector<std::pair<double, Vec3>> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double t = s.times[i % s.times.size()];
      Vec3 x{rng.in(s.box_lo[0], s.box_hi[0]), rng.in(s.box_lo[1], s.box_hi[1]),
             rng.in(s.box_lo[2], s.box_hi[2])};
      out.emplace_back(t, x);
    }
    return out;
  }

  double tolerance_for(const CheckInfo& info) const {
    auto it = config->tolerances.find(info.name);
    const double base = it != config->tolerances.end() ? it->second : info.default_tolerance;
    return base * config->tolerance_scale;
  }
};

CheckReport base_report(const SuiteContext& ctx, const CheckInfo& info,
                        std::size_t registry_index) {
  CheckReport r;
  r.name = info.name;
  r.theorem_tag = info.theorem_tag;
  r.flow = ctx.flow.name;
  for (const auto& [k, v] : ctx.flow.params) r.flow_params[k] = v;
  r.seed = ctx.check_seed(registry_index);
  r.tolerance = ctx.tolerance_for(info);
  return r;
}

// ---------------------------------------------------------------------------
// built-in field suites

EulerianField builtin_transported(const FlowMap& flow, Variance v) {
  switch (v) {
    case Variance::scalar:
      return transported_field(flow, v, [](const Vec3& X) {
        return TensorValue::scalar(X.x + 0.5 * std::sin(X.y));
      });
    case Variance::vector:
      return transported_field(flow, v, [](const Vec3& X) {
        return TensorValue::vector({X.y, -X.x, 1.0 + X.z});
      });
    case Variance::covector:
      return transported_field(flow, v, [](const Vec3& X) {
        return TensorValue::covector({-X.y, X.x, 0.0});
      });
    case Variance::two_form:
      return transported_field(flow, v, [](const Vec3& X) {
        return TensorValue::two_form({0.3 * X.y, -0.1 * X.z, 1.0});
      });
    case Variance::three_form:
      return transported_field(flow, v, [](const Vec3& X) {
        return TensorValue::three_form(1.0 + 0.25 * X.x * X.x);
      });
    case Variance::matrix:
      return transported_field(flow, v, [](const Vec3& X) {
        Mat3 m = Mat3::identity();
        m(0, 1) = X.y;
        m(1, 2) = X.z;
        m(2, 0) = X.x;
        return TensorValue::matrix(m);
      });
  }
  throw VarianceError("unhandled variance tag");
}

// Second transported scalar, used where two independent potentials are needed.
EulerianField builtin_transported_scalar2(const FlowMap& flow) {
  return transported_field(flow, Variance::scalar, [](const Vec3& X) {
    return TensorValue::scalar(X.y - 0.3 * X.z);
  });
}

// Deliberately non-transported fields with an O(1) transport residual in
// every non-static catalog flow.
EulerianField builtin_witness(Variance v) {
  switch (v) {
    case Variance::scalar:
      return field_from_function(v, [](double, const Vec3& x) {
        return TensorValue::scalar(x.x);
      });
    case Variance::vector:
      return constant_field(TensorValue::vector({0.0, 1.0, 0.0}));
    case Variance::covector:
      return constant_field(TensorValue::covector({1.0, 0.0, 0.0}));
    case Variance::two_form:
      return constant_field(TensorValue::two_form({0.0, 1.0, 0.0}));
    case Variance::three_form:
      return field_from_function(v, [](double, const Vec3& x) {
        return TensorValue::three_form(x.x);
      });
    case Variance::matrix:
      return field_from_function(v, [](double, const Vec3& x) {
        Mat3 m = Mat3::zero();
        m(1, 0) = x.x;
        return TensorValue::matrix(m);
      });
  }
  throw VarianceError("unhandled variance tag");
}

constexpr const char* kScalarSuite[5] = {
    "x1*x2", "x1 + x2*x3", "sin(x1)*cos(x2)", "x3^2 - x1", "cos(x3) + t*x1",
};

EulerianField scalar_suite_field(int index) {
  Expr e = parse_or_throw(kScalarSuite[index]);
  return field_from_function(
      Variance::scalar,
      [e](double t, const Vec3& x) { return TensorValue::scalar(e.evaluate(t, x)); },
      Provenance::expression);
}

constexpr Variance kAllVariances[6] = {Variance::scalar,     Variance::vector,
                                       Variance::covector,   Variance::two_form,
                                       Variance::three_form, Variance::matrix};

bool unit_jacobian_flow(const FlowMap& flow) {
  const Vec3 probe{0.31, -0.22, 0.47};
  return std::fabs(deformation_state(flow, 0.7, probe).det_F - 1.0) < 1e-9;
}

// ---------------------------------------------------------------------------
// individual checks

CheckReport check_deformation(const SuiteContext& ctx, const CheckInfo& info,
                              std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"evolved_vs_reference", "differenced_vs_reference"};
  Sampler rng(ctx.check_seed(idx));
  const SamplingConfig& s = ctx.config->sampling;
  std::vector<Vec3> points;
  for (int i = 0; i < 5; ++i)
    points.push_back({rng.in(s.box_lo[0], s.box_hi[0]), rng.in(s.box_lo[1], s.box_hi[1]),
                      rng.in(s.box_lo[2], s.box_hi[2])});
  if (!ctx.flow.has_deformation())
    r.note = "no closed-form tangent map; residuals compare the two numerical routes";
  for (double t : s.times) {
    if (t < 0) continue;
    for (const Vec3& X : points) {
      const Mat3 fd = deformation_gradient(ctx.flow, t, X,
                                           DeformationMethod::finite_difference).F;
      const Mat3 ref = ctx.flow.has_deformation() ? ctx.flow.deformation(t, X) : fd;
      const Mat3 evolved = evolve_deformation(ctx.flow, X, t, 1e-3).F;
      SampleResidual row;
      row.t = t;
      row.x = X;
      row.components = {frobenius_norm(evolved - ref), frobenius_norm(fd - ref)};
      row.magnitude = std::max(row.components[0], row.components[1]);
      r.samples.push_back(std::move(row));
    }
  }
  r.finalize();
  return r;
}

CheckReport check_transport(const SuiteContext& ctx, const CheckInfo& info,
                            std::size_t idx, Variance v) {
  CheckReport r = base_report(ctx, info, idx);
  std::vector<std::pair<std::string, EulerianField>> fields;
  fields.emplace_back("builtin", builtin_transported(ctx.flow, v));
  for (const InstantiatedField& f : ctx.fields)
    if (f.config.variance == v && f.config.expect_transported)
      fields.emplace_back(f.config.name, f.field);
  for (const auto& [name, _] : fields) r.component_names.push_back(name);
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    SampleResidual row;
    row.t = t;
    row.x = x;
    for (const auto& [_, field] : fields)
      row.components.push_back(lie_derivative(field, ctx.flow, t, x).value.norm());
    row.magnitude = *std::max_element(row.components.begin(), row.components.end());
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_witness(const SuiteContext& ctx, const CheckInfo& info,
                          std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  if (ctx.flow.name == "zero") {
    r.note = "static flow carries every field; there is nothing to refute";
    r.finalize();
    return r;
  }
  constexpr double kThreshold = 1e-2;
  std::vector<std::pair<std::string, EulerianField>> fields;
  for (Variance v : kAllVariances)
    fields.emplace_back(std::string(to_string(v)), builtin_witness(v));
  for (const InstantiatedField& f : ctx.fields)
    if (!f.config.expect_transported) fields.emplace_back(f.config.name, f.field);
  const auto samples = ctx.draw_samples(idx, ctx.config->sampling.points);
  SampleResidual row;  // one aggregated row: shortfall below the threshold per field
  for (const auto& [name, field] : fields) {
    double max_dl = 0.0;
    for (const auto& [t, x] : samples)
      max_dl = std::max(max_dl, lie_derivative(field, ctx.flow, t, x).value.norm());
    r.component_names.push_back(name);
    row.components.push_back(std::max(0.0, kThreshold - max_dl));
  }
  row.magnitude = *std::max_element(row.components.begin(), row.components.end());
  r.samples.push_back(std::move(row));
  r.note = "components are max(0, 1e-2 - max |convective derivative|) per witness";
  r.finalize();
  return r;
}

CheckReport check_diagram(const SuiteContext& ctx, const CheckInfo& info,
                          std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  std::vector<EulerianField> fields;
  for (Variance v : kAllVariances) {
    r.component_names.push_back(std::string(to_string(v)));
    fields.push_back(builtin_witness(v));
  }
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    SampleResidual row;
    row.t = t;
    row.x = x;
    for (const EulerianField& field : fields) {
      const TensorValue direct = lie_derivative(field, ctx.flow, t, x).value;
      const TensorValue via = lie_derivative_via_transport(field, ctx.flow, t, x);
      row.components.push_back((direct - via).norm());
    }
    row.magnitude = *std::max_element(row.components.begin(), row.components.end());
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_kelvin(const SuiteContext& ctx, const CheckInfo& info,
                         std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"circulation", "drift"};
  const EulerianField c = builtin_transported(ctx.flow, Variance::covector);
  const MaterialCurve curve = circle_curve(1.0, 0.0, 512);
  const double first = circulation(c, ctx.flow, curve, ctx.config->sampling.times[0]);
  for (double t : ctx.config->sampling.times) {
    const double value = circulation(c, ctx.flow, curve, t);
    SampleResidual row;
    row.t = t;
    row.x = ctx.flow.forward(t, curve.point(0.0));
    row.components = {value, std::fabs(value - first)};
    row.magnitude = row.components[1];
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_flux(const SuiteContext& ctx, const CheckInfo& info, std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"flux", "drift"};
  const EulerianField w = transported_field(ctx.flow, Variance::two_form, [](const Vec3&) {
    return TensorValue::two_form({0.0, 0.0, 1.0});
  });
  const MaterialSurface disk = disk_surface(1.0, 0.0, 64, 64);
  const double first = flux(w, ctx.flow, disk, ctx.config->sampling.times[0]);
  for (double t : ctx.config->sampling.times) {
    const double value = flux(w, ctx.flow, disk, t);
    SampleResidual row;
    row.t = t;
    row.x = ctx.flow.forward(t, disk.point(0.5, 0.5));
    row.components = {value, std::fabs(value - first)};
    row.magnitude = row.components[1];
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_volume(const SuiteContext& ctx, const CheckInfo& info,
                         std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"mass", "drift"};
  const EulerianField rho = density_field(ctx.mass);
  const MaterialVolume cube = unit_cube(32);
  const double first = volume_integral(rho, ctx.flow, cube, ctx.config->sampling.times[0]);
  for (double t : ctx.config->sampling.times) {
    const double value = volume_integral(rho, ctx.flow, cube, t);
    SampleResidual row;
    row.t = t;
    row.x = ctx.flow.forward(t, cube.point({0.5, 0.5, 0.5}));
    row.components = {value, std::fabs(value - first)};
    row.magnitude = row.components[1];
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_mass(const SuiteContext& ctx, const CheckInfo& info, std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"residual"};
  const EulerianField one = constant_field(TensorValue::scalar(1.0));
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    const double res = divergence_law_residual(one, ctx.mass, t, x);
    SampleResidual row;
    row.t = t;
    row.x = x;
    row.components = {res};
    row.magnitude = std::fabs(res);
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_divergence_law(const SuiteContext& ctx, const CheckInfo& info,
                                 std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  std::vector<std::pair<std::string, EulerianField>> fields;
  fields.emplace_back("builtin", builtin_transported(ctx.flow, Variance::scalar));
  for (const InstantiatedField& f : ctx.fields)
    if (f.config.variance == Variance::scalar && f.config.expect_transported)
      fields.emplace_back(f.config.name, f.field);
  for (const auto& [name, _] : fields) r.component_names.push_back(name);
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    SampleResidual row;
    row.t = t;
    row.x = x;
    for (const auto& [_, field] : fields)
      row.components.push_back(std::fabs(divergence_law_residual(field, ctx.mass, t, x)));
    row.magnitude = *std::max_element(row.components.begin(), row.components.end());
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_helmholtz(const SuiteContext& ctx, const CheckInfo& info,
                            std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"r1", "r2", "r3", "norm", "form_gap"};
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    const Vec3 total = helmholtz_residual(ctx.flow, t, x).total;
    const Vec3 density_form = helmholtz_density_residual(ctx.flow, ctx.mass, t, x);
    SampleResidual row;
    row.t = t;
    row.x = x;
    const double gap = norm(total - density_form);
    row.components = {total.x, total.y, total.z, norm(total), gap};
    row.magnitude = std::max(norm(total), gap);
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_commutation(const SuiteContext& ctx, const CheckInfo& info,
                              std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  std::vector<std::pair<std::string, EulerianField>> fields;
  for (int i = 0; i < 5; ++i) fields.emplace_back(kScalarSuite[i], scalar_suite_field(i));
  for (const InstantiatedField& f : ctx.fields)
    if (f.config.variance == Variance::scalar)
      fields.emplace_back(f.config.name, f.field);
  for (const auto& [name, _] : fields) r.component_names.push_back(name);
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    SampleResidual row;
    row.t = t;
    row.x = x;
    for (const auto& [_, field] : fields)
      row.components.push_back(norm(commutation_defect(field, ctx.flow, t, x)));
    row.magnitude = *std::max_element(row.components.begin(), row.components.end());
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_derived(const SuiteContext& ctx, const CheckInfo& info,
                          std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"gradient", "curl_over_rho", "div_rho_j", "wedge"};
  const EulerianField s = builtin_transported(ctx.flow, Variance::scalar);
  const EulerianField s2 = builtin_transported_scalar2(ctx.flow);
  const EulerianField c = builtin_transported(ctx.flow, Variance::covector);
  const EulerianField jf = builtin_transported(ctx.flow, Variance::vector);
  const std::vector<EulerianField> derived = {
      derived_gradient(s),
      derived_curl_over_rho(c, ctx.mass),
      derived_div_rho_j(jf, ctx.mass),
      derived_wedge(s, s2),
  };
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    SampleResidual row;
    row.t = t;
    row.x = x;
    for (const EulerianField& field : derived)
      row.components.push_back(lie_derivative(field, ctx.flow, t, x).value.norm());
    row.magnitude = *std::max_element(row.components.begin(), row.components.end());
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_products(const SuiteContext& ctx, const CheckInfo& info,
                           std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"c_dot_j", "rho_c_j", "j_outer_c", "det_j_outer_c", "rho_w",
                       "rho_c_w"};
  const EulerianField c = builtin_transported(ctx.flow, Variance::covector);
  const EulerianField jf = builtin_transported(ctx.flow, Variance::vector);
  const EulerianField w = builtin_transported(ctx.flow, Variance::two_form);
  const EulerianField rho = density_field(ctx.mass);
  const bool unit_jac = unit_jacobian_flow(ctx.flow);
  std::vector<std::pair<ProductKind, EulerianField>> products = {
      {ProductKind::c_dot_j, product_field(ProductKind::c_dot_j, {c, jf})},
      {ProductKind::rho_c_j, product_field(ProductKind::rho_c_j, {rho, c, jf})},
      {ProductKind::j_outer_c, product_field(ProductKind::j_outer_c, {jf, c})},
      {ProductKind::det_j_outer_c, product_field(ProductKind::det_j_outer_c, {jf, c})},
      {ProductKind::rho_w, product_field(ProductKind::rho_w, {rho, w})},
      {ProductKind::rho_c_w, product_field(ProductKind::rho_c_w, {rho, c, w})},
  };
  if (!unit_jac)
    r.note = "rho_w and rho_c_w need a unit-Jacobian flow; their columns are skipped";
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    SampleResidual row;
    row.t = t;
    row.x = x;
    for (const auto& [kind, field] : products) {
      const bool skipped =
          !unit_jac && (kind == ProductKind::rho_w || kind == ProductKind::rho_c_w);
      row.components.push_back(
          skipped ? 0.0 : lie_derivative(field, ctx.flow, t, x).value.norm());
    }
    row.magnitude = *std::max_element(row.components.begin(), row.components.end());
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_clebsch(const SuiteContext& ctx, const CheckInfo& info,
                          std::size_t idx) {
  const EulerianField s = transported_field(ctx.flow, Variance::scalar, [](const Vec3& X) {
    return TensorValue::scalar(X.z);
  });
  const EulerianField eta = transported_field(ctx.flow, Variance::scalar, [](const Vec3& X) {
    return TensorValue::scalar(X.x);
  });
  const ClebschData data = make_clebsch_data(
      [](double sv, double ev) { return 1.0 + 0.1 * sv * ev; }, s, eta);
  const auto samples = ctx.draw_samples(idx, ctx.config->sampling.points);
  CheckReport r = clebsch_verify(data, ctx.mass, samples, ctx.tolerance_for(info));
  r.name = info.name;
  r.theorem_tag = info.theorem_tag;
  r.seed = ctx.check_seed(idx);
  return r;
}

CheckReport check_charge(const SuiteContext& ctx, const CheckInfo& info,
                         std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"residual"};
  const ChargeField charge{ctx.flow, [](const Vec3& X) {
    return 1.0 + 0.25 * X.x * X.x + 0.25 * X.y * X.y;
  }};
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    const double res = charge_conservation_residual(charge, t, x);
    SampleResidual row;
    row.t = t;
    row.x = x;
    row.components = {res};
    row.magnitude = std::fabs(res);
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_electric(const SuiteContext& ctx, const CheckInfo& info,
                           std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"carried_variation", "uncarried_variation"};
  r.note = "only the carried column gates; the other is reported for contrast";
  const EulerianField carried =
      transported_field(ctx.flow, Variance::two_form, [](const Vec3& X) {
        return TensorValue::two_form({0.2 * X.y, -0.1 * X.x, 1.0});
      });
  const EulerianField uncarried = field_from_function(
      Variance::two_form, [](double t, const Vec3&) {
        return TensorValue::two_form({t, 0.0, 1.0 + 0.5 * t});
      });
  Sampler rng(ctx.check_seed(idx));
  const SamplingConfig& s = ctx.config->sampling;
  for (int i = 0; i < 5; ++i) {
    const Vec3 X{rng.in(s.box_lo[0], s.box_hi[0]), rng.in(s.box_lo[1], s.box_hi[1]),
                 rng.in(s.box_lo[2], s.box_hi[2])};
    SampleResidual row;
    row.t = s.times[0];
    row.x = X;
    row.components = {
        electric_pullback_time_variation(carried, ctx.flow, X, s.times),
        electric_pullback_time_variation(uncarried, ctx.flow, X, s.times)};
    row.magnitude = row.components[0];
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_induction(const SuiteContext& ctx, const CheckInfo& info,
                            std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"r1", "r2", "r3", "norm", "route_gap", "div_h"};
  const EulerianField h = transported_field(ctx.flow, Variance::two_form, [](const Vec3&) {
    return TensorValue::two_form({0.0, 0.0, 1.0});
  });
  for (const auto& [t, x] : ctx.draw_samples(idx, ctx.config->sampling.points)) {
    const InductionResidual res = induction_residual(h, ctx.flow, t, x);
    const TensorValue lie = lie_derivative(h, ctx.flow, t, x).value;
    const double gap = norm(res.residual - lie.as_vec());
    SampleResidual row;
    row.t = t;
    row.x = x;
    row.components = {res.residual.x, res.residual.y, res.residual.z,
                      norm(res.residual), gap, res.div_h};
    row.magnitude = std::max({norm(res.residual), gap, std::fabs(res.div_h)});
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

CheckReport check_integral_rate(const SuiteContext& ctx, const CheckInfo& info,
                                std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"d_dt_integral", "integral_of_lie", "defect"};
  const EulerianField witness = field_from_function(
      Variance::three_form,
      [](double, const Vec3& x) { return TensorValue::three_form(x.x); });
  const MaterialVolume cube = unit_cube(16);
  for (double t : ctx.config->sampling.times) {
    const IntegralRateCheck c = integral_rate_identity(witness, ctx.flow, cube, t);
    SampleResidual row;
    row.t = t;
    row.x = ctx.flow.forward(t, cube.point({0.5, 0.5, 0.5}));
    row.components = {c.d_dt_integral, c.integral_of_lie, c.defect};
    row.magnitude = std::fabs(c.defect);
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

const std::map<std::string, std::array<const char*, 3>>& catalog_velocity_exprs() {
  static const std::map<std::string, std::array<const char*, 3>> table = {
      {"zero", {"0", "0", "0"}},
      {"rotation", {"-omega*x2", "omega*x1", "0"}},
      {"shear", {"gamma*x2", "0", "0"}},
      {"expansion", {"rate*x1", "rate*x2", "rate*x3"}},
      {"cascade", {"x2", "x3", "0"}},
  };
  return table;
}

CheckReport check_flow_crosscheck(const SuiteContext& ctx, const CheckInfo& info,
                                  std::size_t idx) {
  CheckReport r = base_report(ctx, info, idx);
  r.component_names = {"value_gap"};

  FlowMap trajectory;
  const auto& table = catalog_velocity_exprs();
  const auto it = table.find(ctx.flow.name);
  if (it != table.end()) {
    const std::map<std::string, double> params(ctx.flow.params.begin(),
                                               ctx.flow.params.end());
    const std::vector<std::string> names = param_name_list(params);
    std::array<std::function<double(double, const Vec3&)>, 3> comp;
    for (int i = 0; i < 3; ++i) comp[i] = compile_component(it->second[i], names, params);
    trajectory = make_flow_from_velocity(
        ctx.flow.name + "-trajectory",
        [comp](double t, const Vec3& x) {
          return Vec3{comp[0](t, x), comp[1](t, x), comp[2](t, x)};
        },
        1e-2, /*steady=*/true);
  } else {
    trajectory = make_flow_from_velocity(
        ctx.flow.name + "-trajectory",
        [flow = ctx.flow](double t, const Vec3& x) { return flow_velocity(flow, t, x); },
        1e-2);
    r.note = "flow has no catalog expression form; trajectory route rebuilt from its velocity";
  }

  auto reference = [](const Vec3& X) {
    return TensorValue::vector({X.y, -X.x, 1.0 + X.z});
  };
  const EulerianField direct = transported_field(ctx.flow, Variance::vector, reference);
  const EulerianField integrated = transported_field(trajectory, Variance::vector, reference);
  for (const auto& [t, x] : ctx.draw_samples(idx, 20)) {
    SampleResidual row;
    row.t = t;
    row.x = x;
    row.components = {(direct(t, x) - integrated(t, x)).norm()};
    row.magnitude = row.components[0];
    r.samples.push_back(std::move(row));
  }
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// registry

struct CheckEntry {
  CheckInfo info;
  std::function<CheckReport(const SuiteContext&, const CheckInfo&, std::size_t)> run;
};

const std::vector<CheckEntry>& registry() {
  auto transport_entry = [](Variance v) {
    const std::string tail(to_string(v));
    std::string name = "transport-" + tail;
    std::replace(name.begin(), name.end(), '_', '-');
    return CheckEntry{
        {name, "lie-transport-equivalence", 1e-4,
         "carried " + tail + " fields annihilate the convective derivative"},
        [v](const SuiteContext& ctx, const CheckInfo& info, std::size_t idx) {
          return check_transport(ctx, info, idx, v);
        }};
  };
  static const std::vector<CheckEntry> entries = {
      {{"deformation", "tangent-map-kinematics", 1e-6,
        "evolved, differenced and closed-form tangent maps agree"},
       check_deformation},
      transport_entry(Variance::scalar),
      transport_entry(Variance::vector),
      transport_entry(Variance::covector),
      transport_entry(Variance::two_form),
      transport_entry(Variance::three_form),
      transport_entry(Variance::matrix),
      {{"witness", "lie-transport-equivalence", 0.0,
        "non-carried fields leave a visible convective-derivative footprint"},
       check_witness},
      {{"diagram", "convected-frame-diagram", 1e-4,
        "operator route matches the pull-back / push-forward route"},
       check_diagram},
      {{"kelvin", "kelvin-circulation", 1e-6,
        "line integral of a carried 1-form over a material loop is constant"},
       check_kelvin},
      {{"flux", "frozen-flux", 1e-4,
        "flux of a carried 2-form through a material disk is constant"},
       check_flux},
      {{"volume", "mass-conservation", 1e-5, "mass of a material cell is constant"},
       check_volume},
      {{"mass", "mass-conservation", 1e-5,
        "density satisfies the divergence-form balance pointwise"},
       check_mass},
      {{"divergence-law", "divergence-form-law", 1e-5,
        "carried scalars weighted by mass density satisfy the balance law"},
       check_divergence_law},
      {{"helmholtz", "helmholtz-vorticity", 1e-6,
        "vorticity transport residual vanishes and both forms agree"},
       check_helmholtz},
      {{"commutation", "exterior-derivative-commutation", 1e-4,
        "gradient commutes with the convective derivative"},
       check_commutation},
      {{"derived", "transported-field-constructors", 1e-4,
        "gradient, curl, divergence and wedge constructors preserve carriage"},
       check_derived},
      {{"products", "transported-field-products", 1e-4,
        "pointwise products of carried fields stay carried"},
       check_products},
      {{"clebsch", "clebsch-representation", 1e-4,
        "stream-function representation satisfies its four identities"},
       check_clebsch},
      {{"charge", "charge-conservation", 1e-5,
        "volumetric charge satisfies the divergence-form balance"},
       check_charge},
      {{"electric", "convective-pullback", 1e-6,
        "pull-back of a carried displacement field is time-independent"},
       check_electric},
      {{"induction", "faraday-frozen-field", 5e-8,
        "carried magnetic 2-form annihilates the induction residual"},
       check_induction},
      {{"integral-rate", "transport-theorem", 2e-3,
        "d/dt of a volume integral equals the integral of the convective rate"},
       check_integral_rate},
      {{"flow-crosscheck", "trajectory-crosscheck", 1e-6,
        "closed-form and trajectory-integrated flows agree"},
       check_flow_crosscheck},
  };
  return entries;
}

std::vector<std::string> resolve_check_names(const std::vector<std::string>& requested) {
  std::vector<std::string> names;
  auto add = [&names](const std::string& n) {
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  };
  if (requested.empty()) {
    for (const CheckEntry& e : registry()) add(e.info.name);
    return names;
  }
  for (const std::string& n : requested) {
    if (n == "transport-all-variances") {
      for (const CheckEntry& e : registry())
        if (e.info.name.starts_with("transport-")) add(e.info.name);
      continue;
    }
    if (!is_known_check(n))
      throw ConfigError("checks: unknown check '" + n + "'; known checks: " +
                        known_check_names());
    add(n);
  }
  return names;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const CheckEntry& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

std::vector<CheckReport> run_suite(const RunConfig& config, std::ostream* console) {
  SuiteContext ctx;
  ctx.config = &config;
  ctx.flow = build_flow(config.flow);
  ctx.mass = MassField{ctx.flow, [](const Vec3&) { return 1.0; }};
  for (const FieldConfig& fc : config.fields)
    ctx.fields.push_back({fc, build_field(fc, ctx.flow)});

  const std::vector<std::string> names = resolve_check_names(config.checks);
  std::vector<CheckReport> reports;
  for (const std::string& name : names) {
    std::size_t idx = 0;
    while (registry()[idx].info.name != name) ++idx;
    const CheckEntry& entry = registry()[idx];

    const auto start = std::chrono::steady_clock::now();
    CheckReport report;
    try {
      report = entry.run(ctx, entry.info, idx);
    } catch (const std::exception& e) {
      report = base_report(ctx, entry.info, idx);
      report.note = std::string("aborted: ") + e.what();
      report.max_residual = 9.9e99;
      report.pass = false;
    }
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    try {
      if (config.output.write_json)
        emit_series(report, config.output.directory, "json");
      if (config.output.write_csv) emit_series(report, config.output.directory, "csv");
    } catch (const std::exception& e) {
      report.pass = false;
      report.note += report.note.empty() ? "" : "; ";
      report.note += std::string("report write failed: ") + e.what();
    }

    if (console) {
      char line[256];
      std::snprintf(line, sizeof line, "%-4s %-22s %-32s max %-12.3g tol %-10.3g (%.0f ms)",
                    report.pass ? "PASS" : "FAIL", report.name.c_str(),
                    report.theorem_tag.c_str(), report.max_residual, report.tolerance,
                    report.runtime_ms);
      *console << line << '\n';
      if (!report.note.empty()) *console << "     note: " << report.note << '\n';
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

bool all_passed(std::span<const CheckReport> reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.pass; });
}

std::string render_json(const CheckReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["theorem_tag"] = report.theorem_tag;
  j["flow"] = report.flow;
  j["flow_params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.flow_params) j["flow_params"][k] = v;
  j["seed"] = report.seed;
  j["tolerance"] = report.tolerance;
  j["max_residual"] = report.max_residual;
  j["pass"] = report.pass;
  j["note"] = report.note;
  j["component_names"] = report.component_names;
  j["samples"] = nlohmann::ordered_json::array();
  for (const SampleResidual& s : report.samples) {
    nlohmann::ordered_json row;
    row["t"] = s.t;
    row["x"] = {s.x.x, s.x.y, s.x.z};
    row["components"] = s.components;
    row["magnitude"] = s.magnitude;
    j["samples"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string render_csv(const CheckReport& report) {
  std::string out = "t,x1,x2,x3";
  for (const std::string& name : report.component_names) out += "," + name;
  out += ",magnitude\n";
  for (const SampleResidual& s : report.samples) {
    out += format_double(s.t);
    out += ',' + format_double(s.x.x) + ',' + format_double(s.x.y) + ',' +
           format_double(s.x.z);
    for (double c : s.components) out += ',' + format_double(c);
    out += ',' + format_double(s.magnitude) + '\n';
  }
  return out;
}

std::filesystem::path emit_series(const CheckReport& report,
                                  const std::filesystem::path& directory,
                                  std::string_view format) {
  std::string body;
  if (format == "json")
    body = render_json(report);
  else if (format == "csv")
    body = render_csv(report);
  else
    throw ConfigError("unknown report format '" + std::string(format) +
                      "'; expected 'json' or 'csv'");
  std::filesystem::create_directories(directory);
  const std::filesystem::path path =
      directory / (report.name + "." + std::string(format));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << body;
  out.flush();
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
  return path;
}

std::string list_catalog(bool as_json, std::string_view filter) {
  const auto matches = [filter](const std::string& name) {
    return filter.empty() || name.find(filter) != std::string::npos;
  };

  struct SuiteLine {
    const char* name;
    const char* description;
  };
  static const SuiteLine suites[] = {
      {"transported",
       "one reference-frame field per variance, carried along the configured flow"},
      {"witness", "one deliberately non-carried field per variance"},
      {"commutation-scalars", "five polynomial/trigonometric scalar fields"},
  };

  if (as_json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const FlowSpec& f : flow_catalog()) {
      if (!matches(f.name)) continue;
      nlohmann::ordered_json e;
      e["kind"] = "flow";
      e["name"] = f.name;
      e["params"] = f.param_names;
      e["closed_form_tangent_map"] = true;
      e["summary"] = f.summary;
      arr.push_back(std::move(e));
    }
    for (const SuiteLine& s : suites) {
      if (!matches(s.name)) continue;
      nlohmann::ordered_json e;
      e["kind"] = "field-suite";
      e["name"] = s.name;
      e["summary"] = s.description;
      arr.push_back(std::move(e));
    }
    for (const CheckInfo& c : check_registry()) {
      if (!matches(c.name)) continue;
      nlohmann::ordered_json e;
      e["kind"] = "check";
      e["name"] = c.name;
      e["theorem_tag"] = c.theorem_tag;
      e["default_tolerance"] = c.default_tolerance;
      e["summary"] = c.summary;
      arr.push_back(std::move(e));
    }
    return arr.dump(2) + "\n";
  }

  std::string out;
  out += "flows:\n";
  for (const FlowSpec& f : flow_catalog()) {
    if (!matches(f.name)) continue;
    std::string params;
    for (const std::string& p : f.param_names) params += (params.empty() ? "" : ", ") + p;
    if (params.empty()) params = "(none)";
    char line[256];
    std::snprintf(line, sizeof line, "  %-12s params: %-14s closed-form tangent map   %s\n",
                  f.name.c_str(), params.c_str(), f.summary.c_str());
    out += line;
  }
  out += "field suites:\n";
  for (const SuiteLine& s : suites) {
    if (!matches(s.name)) continue;
    char line[256];
    std::snprintf(line, sizeof line, "  %-22s %s\n", s.name, s.description);
    out += line;
  }
  out += "checks:\n";
  for (const CheckInfo& c : check_registry()) {
    if (!matches(c.name)) continue;
    char line[320];
    std::snprintf(line, sizeof line, "  %-22s %-32s tol %-10.1e %s\n", c.name.c_str(),
                  c.theorem_tag.c_str(), c.default_tolerance, c.summary.c_str());
    out += line;
  }
  return out;
}

}  // namespace lieflow
