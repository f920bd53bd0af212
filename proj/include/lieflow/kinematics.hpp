#pragma once

#include <functional>

#include "lieflow/flow_map.hpp"
#include "lieflow/linalg.hpp"
#include "lieflow/numdiff.hpp"

namespace lieflow {

/// Deformation gradient F = d(forward)/dX at a reference point, together
/// with its inverse and determinant.  Invariants enforced at construction:
/// det F above the admissibility floor and F * F_inv within rounding of the
/// identity.
struct DeformationState {
  Mat3 F;
  Mat3 F_inv;
  double det_F = 1.0;
  double t = 0.0;
  Vec3 X;
};

/// Builds a DeformationState from F, validating the determinant floor.
DeformationState make_deformation_state(const Mat3& F, double t, const Vec3& X);

enum class DeformationMethod { analytic, finite_difference };

/// Velocity gradient du/dx at (t, x): the closed form when the flow carries
/// one, otherwise central differences with step h.
Mat3 velocity_gradient(const FlowMap& flow, double t, const Vec3& x,
                       double h = kSpaceStep);

/// Deformation gradient at (t, X) by the requested route.  `analytic`
/// requires the flow to carry a closed form; `finite_difference` applies
/// central differences with step h to the forward map.
DeformationState deformation_gradient(const FlowMap& flow, double t, const Vec3& X,
                                      DeformationMethod method,
                                      double h = kSpaceStep);

/// Closed form when available, finite differences otherwise.
DeformationState deformation_state(const FlowMap& flow, double t, const Vec3& X);

/// Integrates dF/dt = L F and dF_inv/dt = -F_inv L along the trajectory of X
/// with classical fixed-step fourth-order Runge-Kutta (the trajectory itself
/// advances inside the same stages).  The step count is round(t_end / dt),
/// so the effective step matches dt up to the final-time snap.
DeformationState evolve_deformation(const FlowMap& flow, const Vec3& X,
                                    double t_end, double dt);

/// Mass distribution carried by a flow: a strictly positive reference
/// density rho0 on the initial configuration.
struct MassField {
  FlowMap flow;
  std::function<double(const Vec3&)> rho0;
};

/// Current density rho(t, x) = rho0(X) / det F with X = inverse(t, x).
/// rho * det F is constant along trajectories by construction.
double mass_density(const MassField& mass, double t, const Vec3& x);

}  // namespace lieflow
