#include "lieflow/kinematics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lieflow/errors.hpp"

namespace lieflow {

DeformationState make_deformation_state(const Mat3& F, double t, const Vec3& X) {
  const double det = determinant(F);
  if (!std::isfinite(det) || det <= kDetFloor)
    throw DegenerateMapError(
        "deformation gradient determinant " + std::to_string(det) +
            " at t=" + std::to_string(t) + " is at or below the floor",
        det);
  DeformationState s;
  s.F = F;
  s.F_inv = inverse(F);
  s.det_F = det;
  s.t = t;
  s.X = X;
  return s;
}

Mat3 velocity_gradient(const FlowMap& flow, double t, const Vec3& x, double h) {
  if (flow.has_velocity_jacobian()) return flow.velocity_jacobian(t, x);
  return numdiff::jacobian([&](const Vec3& p) { return flow_velocity(flow, t, p); }, x, h);
}

DeformationState deformation_gradient(const FlowMap& flow, double t, const Vec3& X,
                                      DeformationMethod method, double h) {
  if (method == DeformationMethod::analytic) {
    if (!flow.has_deformation())
      throw std::invalid_argument("flow '" + flow.name +
                                  "' has no closed-form deformation gradient");
    return make_deformation_state(flow.deformation(t, X), t, X);
  }
  const Mat3 F =
      numdiff::jacobian([&](const Vec3& P) { return flow.forward(t, P); }, X, h);
  return make_deformation_state(F, t, X);
}

DeformationState deformation_state(const FlowMap& flow, double t, const Vec3& X) {
  return deformation_gradient(flow, t, X,
                              flow.has_deformation() ? DeformationMethod::analytic
                                                     : DeformationMethod::finite_difference);
}

namespace {

struct EvolveState {
  Vec3 x;
  Mat3 F;
  Mat3 F_inv;
};

EvolveState rhs(const FlowMap& flow, double t, const EvolveState& s) {
  const Mat3 L = velocity_gradient(flow, t, s.x);
  return {flow_velocity(flow, t, s.x), L * s.F, -1.0 * (s.F_inv * L)};
}

EvolveState axpy(const EvolveState& s, double a, const EvolveState& d) {
  return {s.x + a * d.x, s.F + a * d.F, s.F_inv + a * d.F_inv};
}

}  // namespace

DeformationState evolve_deformation(const FlowMap& flow, const Vec3& X,
                                    double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integration step dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("final time must be non-negative");

  EvolveState s{X, Mat3::identity(), Mat3::identity()};
  if (t_end > 0.0) {
    const int n = std::max(1, static_cast<int>(std::llround(t_end / dt)));
    const double h = t_end / n;
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
      const EvolveState k1 = rhs(flow, t, s);
      const EvolveState k2 = rhs(flow, t + 0.5 * h, axpy(s, 0.5 * h, k1));
      const EvolveState k3 = rhs(flow, t + 0.5 * h, axpy(s, 0.5 * h, k2));
      const EvolveState k4 = rhs(flow, t + h, axpy(s, h, k3));
      s.x += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
      s.F += (h / 6.0) * (k1.F + 2.0 * k2.F + 2.0 * k3.F + k4.F);
      s.F_inv += (h / 6.0) * (k1.F_inv + 2.0 * k2.F_inv + 2.0 * k3.F_inv + k4.F_inv);
      t = t_end * static_cast<double>(i + 1) / n;
    }
  }

  // Both matrices come from the integrator; F * F_inv staying near the
  // identity is a live consistency indicator rather than an identity by
  // construction.
  const double det = determinant(s.F);
  if (!std::isfinite(det) || det <= kDetFloor)
    throw DegenerateMapError("integrated deformation gradient determinant " +
                                 std::to_string(det) + " is at or below the floor",
                             det);
  DeformationState out;
  out.F = s.F;
  out.F_inv = s.F_inv;
  out.det_F = det;
  out.t = t_end;
  out.X = X;
  return out;
}

double mass_density(const MassField& mass, double t, const Vec3& x) {
  const Vec3 X = mass.flow.inverse(t, x);
  const double r0 = mass.rho0(X);
  if (!std::isfinite(r0) || r0 <= 0.0)
    throw DomainError("reference density must be positive and finite");
  const DeformationState D = deformation_state(mass.flow, t, X);
  return r0 / D.det_F;
}

}  // namespace lieflow
