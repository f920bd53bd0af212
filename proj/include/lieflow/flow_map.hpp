#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lieflow/linalg.hpp"

namespace lieflow {

/// A time-dependent diffeomorphism of R^3 together with its velocity field.
/// `forward` maps a reference point X to its position at time t; `inverse`
/// undoes it at the same time.  Closed-form deformation gradients and
/// velocity Jacobians are optional accelerators: when absent, consumers fall
/// back to central finite differences or trajectory integration.
struct FlowMap {
  std::string name;
  std::vector<std::pair<std::string, double>> params;

  std::function<Vec3(double t, const Vec3& X)> forward;
  std::function<Vec3(double t, const Vec3& x)> inverse;
  std::function<Vec3(double t, const Vec3& x)> velocity;

  /// dF/dX of `forward` at (t, X); empty when no closed form is available.
  std::function<Mat3(double t, const Vec3& X)> deformation;
  /// du/dx at (t, x); empty when no closed form is available.
  std::function<Mat3(double t, const Vec3& x)> velocity_jacobian;

  bool steady = false;             // velocity has no explicit t dependence
  bool velocity_is_derived = false;  // velocity was reconstructed from the maps

  bool has_deformation() const { return static_cast<bool>(deformation); }
  bool has_velocity_jacobian() const { return static_cast<bool>(velocity_jacobian); }
};

/// Evaluates the velocity and rejects non-finite results.
/// Throws EvaluationError carrying the offending point.
Vec3 flow_velocity(const FlowMap& flow, double t, const Vec3& x);

// Catalog constructors.  Every catalog flow is steady and carries closed
// forms for forward, inverse, deformation gradient and velocity Jacobian.
FlowMap make_zero_flow();
FlowMap make_rotation_flow(double omega);      // rigid rotation about e3
FlowMap make_shear_flow(double gamma);         // x1 advected by gamma * x2
FlowMap make_expansion_flow(double rate);      // isotropic exponential scaling
FlowMap make_cascade_flow();                   // u = (x2, x3, 0)

struct FlowSpec {
  std::string name;
  std::vector<std::string> param_names;
  std::string summary;
};

/// Names, parameters and one-line summaries of the built-in flows.
const std::vector<FlowSpec>& flow_catalog();

/// Instantiates a catalog flow by name.  Unknown names raise ConfigError
/// whose message lists the available flows.  Missing parameters default to 1.
FlowMap make_catalog_flow(const std::string& name,
                          const std::map<std::string, double>& params = {});

/// Builds a flow from a velocity field alone.  Forward and inverse maps are
/// produced by fixed-step fourth-order Runge-Kutta integration along
/// trajectories (forward from 0 to t, backward from t to 0) with step
/// `step`; no closed-form deformation gradient is attached.
FlowMap make_flow_from_velocity(std::string name,
                                std::function<Vec3(double, const Vec3&)> velocity,
                                double step = 1e-2, bool steady = false);

/// Builds a flow from forward/inverse maps alone; the velocity is derived as
/// the central-difference time derivative of `forward` composed with
/// `inverse`, and the result is flagged `velocity_is_derived`.
FlowMap make_flow_from_maps(std::string name,
                            std::function<Vec3(double, const Vec3&)> forward,
                            std::function<Vec3(double, const Vec3&)> inverse);

}  // namespace lieflow
