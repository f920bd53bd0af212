#pragma once

#include <functional>
#include <span>
#include <utility>

#include "lieflow/lie_calculus.hpp"
#include "lieflow/report.hpp"
#include "lieflow/transport.hpp"

namespace lieflow {

/// Residual of the divergence-form conservation law
/// d(rho beta)/dt + div(rho beta u) at (t, x), by central differences.
/// Zero (to stencil error) whenever beta is a transported scalar; beta = 1
/// recovers mass conservation.
double divergence_law_residual(const EulerianField& beta, const MassField& mass,
                               double t, const Vec3& x, double ht = kTimeStep,
                               double h = kSpaceStep);

/// Representation of a current as a stream-function pair: rho J is assembled
/// as f(s, eta) * grad(s) x grad(eta).  Built through make_clebsch_data so
/// the structural identity holds by construction.
struct ClebschData {
  std::function<double(double, double)> f;
  EulerianField s;    // scalar
  EulerianField eta;  // scalar
  EulerianField rho_j;  // vector components of rho * J
};

ClebschData make_clebsch_data(std::function<double(double, double)> f,
                              const EulerianField& s, const EulerianField& eta,
                              double h = kSpaceStep);

/// Checks the premises and consequences of the representation at the given
/// samples: div(rho J) = 0, grad(s) . J = 0, both potentials materially
/// constant, and J = rho_j / rho conserved as a vector field.  Residual
/// columns appear in that order; the report passes when every column stays
/// within the tolerance.  Throws DomainError when rho is not positive at a
/// sample.
CheckReport clebsch_verify(const ClebschData& data, const MassField& mass,
                           std::span<const std::pair<double, Vec3>> samples,
                           double tolerance);

/// Scalar density carried as "charge per unit volume": q = q0 / det F.
struct ChargeField {
  FlowMap flow;
  std::function<double(const Vec3&)> q0;
};

/// Residual of dq/dt + div(q u) at (t, x); zero to stencil error because
/// q det F is constant along trajectories by construction.
double charge_conservation_residual(const ChargeField& charge, double t, const Vec3& x,
                                    double ht = kTimeStep, double h = kSpaceStep);

/// Pulls a displacement-style field back to the reference configuration with
/// the 2-form rule: D0 = det F * F^-1 * D(t, x) at X = inverse(t, x).
/// Accepts vector- or two_form-tagged components; the tag expresses what the
/// caller claims about transport, the formula uses the components only.
Vec3 electric_pullback(const EulerianField& d, const FlowMap& flow, double t,
                       const Vec3& x);

/// Variation of the pulled-back value at a fixed reference point across the
/// given times: max_i |D0(t_i) - D0(t_0)|.  Near zero exactly when the field
/// is transported; otherwise the pullback retains a time dependence, which
/// this reports rather than forbids.
double electric_pullback_time_variation(const EulerianField& d, const FlowMap& flow,
                                        const Vec3& X, std::span<const double> times);

/// Induction-style transport residual for a 2-form field:
/// dH/dt + H div u - L H (material d/dt), plus the field divergence at the
/// same point.  Deliberately assembled independently of lie_derivative so
/// the two code paths can be compared.
struct InductionResidual {
  Vec3 residual;
  double div_h;
};

InductionResidual induction_residual(const EulerianField& h_field, const FlowMap& flow,
                                     double t, const Vec3& x, double ht = kTimeStep,
                                     double h = kSpaceStep);

}  // namespace lieflow
