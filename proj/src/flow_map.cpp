#include "lieflow/flow_map.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "lieflow/errors.hpp"
#include "lieflow/numdiff.hpp"

namespace lieflow {

Vec3 flow_velocity(const FlowMap& flow, double t, const Vec3& x) {
  const Vec3 u = flow.velocity(t, x);
  if (!all_finite(u))
    throw EvaluationError("velocity of flow '" + flow.name + "' is non-finite", t, x);
  return u;
}

FlowMap make_zero_flow() {
  FlowMap f;
  f.name = "zero";
  f.forward = [](double, const Vec3& X) { return X; };
  f.inverse = [](double, const Vec3& x) { return x; };
  f.velocity = [](double, const Vec3&) { return Vec3{}; };
  f.deformation = [](double, const Vec3&) { return Mat3::identity(); };
  f.velocity_jacobian = [](double, const Vec3&) { return Mat3::zero(); };
  f.steady = true;
  return f;
}

FlowMap make_rotation_flow(double omega) {
  FlowMap f;
  f.name = "rotation";
  f.params = {{"omega", omega}};
  auto rot = [omega](double t, const Vec3& v, double sign) {
    const double c = std::cos(sign * omega * t), s = std::sin(sign * omega * t);
    return Vec3{c * v.x - s * v.y, s * v.x + c * v.y, v.z};
  };
  f.forward = [rot](double t, const Vec3& X) { return rot(t, X, 1.0); };
  f.inverse = [rot](double t, const Vec3& x) { return rot(t, x, -1.0); };
  f.velocity = [omega](double, const Vec3& x) { return Vec3{-omega * x.y, omega * x.x, 0.0}; };
  f.deformation = [omega](double t, const Vec3&) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    Mat3 F;
    F.m = {c, -s, 0, s, c, 0, 0, 0, 1};
    return F;
  };
  f.velocity_jacobian = [omega](double, const Vec3&) {
    Mat3 L;
    L.m = {0, -omega, 0, omega, 0, 0, 0, 0, 0};
    return L;
  };
  f.steady = true;
  return f;
}

FlowMap make_shear_flow(double gamma) {
  FlowMap f;
  f.name = "shear";
  f.params = {{"gamma", gamma}};
  f.forward = [gamma](double t, const Vec3& X) {
    return Vec3{X.x + gamma * t * X.y, X.y, X.z};
  };
  f.inverse = [gamma](double t, const Vec3& x) {
    return Vec3{x.x - gamma * t * x.y, x.y, x.z};
  };
  f.velocity = [gamma](double, const Vec3& x) { return Vec3{gamma * x.y, 0.0, 0.0}; };
  f.deformation = [gamma](double t, const Vec3&) {
    Mat3 F;
    F.m = {1, gamma * t, 0, 0, 1, 0, 0, 0, 1};
    return F;
  };
  f.velocity_jacobian = [gamma](double, const Vec3&) {
    Mat3 L;
    L.m = {0, gamma, 0, 0, 0, 0, 0, 0, 0};
    return L;
  };
  f.steady = true;
  return f;
}

FlowMap make_expansion_flow(double rate) {
  FlowMap f;
  f.name = "expansion";
  f.params = {{"rate", rate}};
  f.forward = [rate](double t, const Vec3& X) { return std::exp(rate * t) * X; };
  f.inverse = [rate](double t, const Vec3& x) { return std::exp(-rate * t) * x; };
  f.velocity = [rate](double, const Vec3& x) { return rate * x; };
  f.deformation = [rate](double t, const Vec3&) {
    const double e = std::exp(rate * t);
    return Mat3::diagonal(e, e, e);
  };
  f.velocity_jacobian = [rate](double, const Vec3&) {
    return Mat3::diagonal(rate, rate, rate);
  };
  f.steady = true;
  return f;
}

FlowMap make_cascade_flow() {
  FlowMap f;
  f.name = "cascade";
  f.forward = [](double t, const Vec3& X) {
    return Vec3{X.x + t * X.y + 0.5 * t * t * X.z, X.y + t * X.z, X.z};
  };
  f.inverse = [](double t, const Vec3& x) {
    return Vec3{x.x - t * x.y + 0.5 * t * t * x.z, x.y - t * x.z, x.z};
  };
  f.velocity = [](double, const Vec3& x) { return Vec3{x.y, x.z, 0.0}; };
  f.deformation = [](double t, const Vec3&) {
    Mat3 F;
    F.m = {1, t, 0.5 * t * t, 0, 1, t, 0, 0, 1};
    return F;
  };
  f.velocity_jacobian = [](double, const Vec3&) {
    Mat3 L;
    L.m = {0, 1, 0, 0, 0, 1, 0, 0, 0};
    return L;
  };
  f.steady = true;
  return f;
}

const std::vector<FlowSpec>& flow_catalog() {
  static const std::vector<FlowSpec> catalog = {
      {"zero", {}, "identity map, zero velocity"},
      {"rotation", {"omega"}, "rigid rotation about e3 at angular rate omega"},
      {"shear", {"gamma"}, "simple shear: x1 advected at rate gamma * x2"},
      {"expansion", {"rate"}, "isotropic exponential expansion"},
      {"cascade", {}, "steady velocity (x2, x3, 0); vorticity not frozen-in"},
  };
  return catalog;
}

FlowMap make_catalog_flow(const std::string& name,
                          const std::map<std::string, double>& params) {
  auto param = [&params](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "zero") return make_zero_flow();
  if (name == "rotation") return make_rotation_flow(param("omega", 1.0));
  if (name == "shear") return make_shear_flow(param("gamma", 1.0));
  if (name == "expansion") return make_expansion_flow(param("rate", 1.0));
  if (name == "cascade") return make_cascade_flow();
  std::string known;
  for (const auto& spec : flow_catalog()) {
    if (!known.empty()) known += ", ";
    known += spec.name;
  }
  throw ConfigError("unknown flow '" + name + "'; catalog flows are: " + known);
}

namespace {

// Classical fixed-step RK4 along a trajectory of `velocity` from t0 to t1.
Vec3 integrate_trajectory(const std::function<Vec3(double, const Vec3&)>& velocity,
                          const Vec3& start, double t0, double t1, double step) {
  const double span = t1 - t0;
  if (span == 0.0) return start;
  const int n = std::max(1, static_cast<int>(std::llround(std::fabs(span) / step)));
  const double h = span / n;
  Vec3 x = start;
  double t = t0;
  for (int i = 0; i < n; ++i) {
    const Vec3 k1 = velocity(t, x);
    const Vec3 k2 = velocity(t + 0.5 * h, x + 0.5 * h * k1);
    const Vec3 k3 = velocity(t + 0.5 * h, x + 0.5 * h * k2);
    const Vec3 k4 = velocity(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t0 + (i + 1) * h;
    if (!all_finite(x))
      throw EvaluationError("trajectory integration diverged", t, x);
  }
  return x;
}

}  // namespace

FlowMap make_flow_from_velocity(std::string name,
                                std::function<Vec3(double, const Vec3&)> velocity,
                                double step, bool steady) {
  if (!(step > 0.0)) throw std::invalid_argument("trajectory step must be positive");
  FlowMap f;
  f.name = std::move(name);
  f.velocity = velocity;
  f.forward = [velocity, step](double t, const Vec3& X) {
    return integrate_trajectory(velocity, X, 0.0, t, step);
  };
  f.inverse = [velocity, step](double t, const Vec3& x) {
    return integrate_trajectory(velocity, x, t, 0.0, step);
  };
  f.steady = steady;
  return f;
}

FlowMap make_flow_from_maps(std::string name,
                            std::function<Vec3(double, const Vec3&)> forward,
                            std::function<Vec3(double, const Vec3&)> inverse) {
  FlowMap f;
  f.name = std::move(name);
  f.forward = forward;
  f.inverse = inverse;
  f.velocity = [forward, inverse](double t, const Vec3& x) {
    const Vec3 X = inverse(t, x);
    return numdiff::time_derivative([&](double tau) { return forward(tau, X); }, t);
  };
  f.velocity_is_derived = true;
  return f;
}

}  // namespace lieflow
