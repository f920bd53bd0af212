#pragma once

#include <string>
#include <vector>

#include "lieflow/transport.hpp"

namespace lieflow {

/// One named contribution to a Lie derivative (local rate, advection,
/// dilation, velocity-gradient coupling).  The parts sum to the value
/// exactly: the value is assembled by adding them.
struct LiePart {
  std::string name;
  TensorValue value;
};

struct LieResult {
  Variance variance;
  TensorValue value;
  std::vector<LiePart> parts;
};

/// Material derivative d/dt + u . grad of a scalar field, by central
/// differences in t (step ht) and x (step h).
double material_derivative(const EulerianField& s, const FlowMap& flow, double t,
                           const Vec3& x, double ht = kTimeStep, double h = kSpaceStep);

/// Convective (Lie) derivative of a field along the flow.  A field vanishes
/// under this operator exactly when it is carried by the flow with the
/// transformation rule of its variance tag:
///   scalar      ds/dt
///   vector      dJ/dt - L J
///   covector    dC/dt + C L
///   two_form    dW/dt + W div u - L W
///   three_form  dv/dt + v div u
///   matrix      dM/dt + M L - L M
/// where d/dt is the componentwise material derivative and L = du/dx.
LieResult lie_derivative(const EulerianField& field, const FlowMap& flow, double t,
                         const Vec3& x, double ht = kTimeStep, double h = kSpaceStep);

/// Independent route to the same quantity: pull the field back to the
/// reference configuration along the trajectory through (t, x), take the
/// centered time derivative of the pulled-back value at fixed reference
/// point, and push the rate forward again.  Used to cross-check
/// lie_derivative; the two routes share no assembly code.
TensorValue lie_derivative_via_transport(const EulerianField& field, const FlowMap& flow,
                                         double t, const Vec3& x,
                                         double ht = kTimeStep);

/// curl u at (t, x); exact when the flow carries a closed-form velocity
/// Jacobian, otherwise central differences.
Vec3 vorticity(const FlowMap& flow, double t, const Vec3& x, double h = kSpaceStep);

/// Terms of d(omega)/dt + omega div u - L omega with d/dt material:
/// the 2-form transport residual of the vorticity.  Zero exactly when the
/// vorticity 2-form is carried by the flow.
struct HelmholtzResidual {
  Vec3 total;
  Vec3 partial_t;
  Vec3 advection;
  Vec3 dilation;
  Vec3 tilt;
};

HelmholtzResidual helmholtz_residual(const FlowMap& flow, double t, const Vec3& x,
                                     double ht = kTimeStep, double h = kSpaceStep);

/// Density-weighted form of the same statement: rho times the vector Lie
/// derivative of omega / rho.  Agrees with helmholtz_residual(...).total up
/// to stencil error; the two are compared as a consistency check.
Vec3 helmholtz_density_residual(const FlowMap& flow, const MassField& mass, double t,
                                const Vec3& x, double ht = kTimeStep,
                                double h = kSpaceStep);

/// Defect of "gradient commutes with the convective derivative":
/// lie_derivative(grad s) - grad(material_derivative s), as covector
/// components.  Vanishes for smooth scalar fields up to stencil error.
Vec3 commutation_defect(const EulerianField& s, const FlowMap& flow, double t,
                        const Vec3& x, double ht = kTimeStep, double h = kSpaceStep);

}  // namespace lieflow
