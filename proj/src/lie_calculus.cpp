#include "lieflow/lie_calculus.hpp"

#include "lieflow/errors.hpp"
#include "lieflow/numdiff.hpp"

namespace lieflow {

namespace {

/// Componentwise material derivative split into its two stencil parts.
struct MaterialParts {
  TensorValue partial_t;
  TensorValue advection;
};

MaterialParts material_parts(const EulerianField& field, const FlowMap& flow, double t,
                             const Vec3& x, double ht, double h) {
  const TensorValue plus = field(t + ht, x);
  const TensorValue minus = field(t - ht, x);
  TensorValue partial_t = (plus - minus) * (1.0 / (2.0 * ht));

  const Vec3 u = flow_velocity(flow, t, x);
  TensorValue advection = TensorValue::zero(field.variance());
  for (int i = 0; i < 3; ++i) {
    Vec3 xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    advection = advection + (field(t, xp) - field(t, xm)) * (u[i] / (2.0 * h));
  }
  return {partial_t, advection};
}

}  // namespace

double material_derivative(const EulerianField& s, const FlowMap& flow, double t,
                           const Vec3& x, double ht, double h) {
  if (s.variance() != Variance::scalar)
    throw VarianceError("material_derivative expects a scalar field, got " +
                        std::string(to_string(s.variance())));
  const MaterialParts mp = material_parts(s, flow, t, x, ht, h);
  return mp.partial_t.as_scalar() + mp.advection.as_scalar();
}

LieResult lie_derivative(const EulerianField& field, const FlowMap& flow, double t,
                         const Vec3& x, double ht, double h) {
  const Variance v = field.variance();
  const MaterialParts mp = material_parts(field, flow, t, x, ht, h);
  const Mat3 L = velocity_gradient(flow, t, x, h);
  const double div_u = trace(L);

  LieResult result{v, TensorValue::zero(v), {}};
  result.parts.push_back({"partial_t", mp.partial_t});
  result.parts.push_back({"advection", mp.advection});

  const TensorValue center = field(t, x);
  switch (v) {
    case Variance::scalar:
      break;
    case Variance::vector:
      result.parts.push_back({"tilt", TensorValue::vector(-(L * center.as_vec()))});
      break;
    case Variance::covector:
      result.parts.push_back({"stretch", TensorValue::covector(row_times(center.as_vec(), L))});
      break;
    case Variance::two_form:
      result.parts.push_back({"dilation", TensorValue::two_form(center.as_vec() * div_u)});
      result.parts.push_back({"tilt", TensorValue::two_form(-(L * center.as_vec()))});
      break;
    case Variance::three_form:
      result.parts.push_back({"dilation", TensorValue::three_form(center.as_scalar() * div_u)});
      break;
    case Variance::matrix:
      result.parts.push_back(
          {"right_velocity_gradient", TensorValue::matrix(center.as_mat() * L)});
      result.parts.push_back(
          {"left_velocity_gradient", TensorValue::matrix(-1.0 * (L * center.as_mat()))});
      break;
  }

  TensorValue value = TensorValue::zero(v);
  for (const LiePart& p : result.parts) value = value + p.value;
  result.value = value;
  return result;
}

TensorValue lie_derivative_via_transport(const EulerianField& field, const FlowMap& flow,
                                         double t, const Vec3& x, double ht) {
  const Vec3 X = flow.inverse(t, x);
  auto pulled = [&](double tau) {
    const Vec3 x_tau = flow.forward(tau, X);
    return pull_back(field(tau, x_tau), deformation_state(flow, tau, X));
  };
  const TensorValue rate = (pulled(t + ht) - pulled(t - ht)) * (1.0 / (2.0 * ht));
  return push_forward(rate, deformation_state(flow, t, X));
}

Vec3 vorticity(const FlowMap& flow, double t, const Vec3& x, double h) {
  return numdiff::curl_from_jacobian(velocity_gradient(flow, t, x, h));
}

HelmholtzResidual helmholtz_residual(const FlowMap& flow, double t, const Vec3& x,
                                     double ht, double h) {
  auto omega = [&flow, h](double tt, const Vec3& xx) { return vorticity(flow, tt, xx, h); };

  const Vec3 w = omega(t, x);
  const Mat3 L = velocity_gradient(flow, t, x, h);
  const Vec3 u = flow_velocity(flow, t, x);

  HelmholtzResidual r;
  r.partial_t = (omega(t + ht, x) - omega(t - ht, x)) * (1.0 / (2.0 * ht));
  const Mat3 Jw = numdiff::jacobian([&](const Vec3& p) { return omega(t, p); }, x, h);
  r.advection = Jw * u;
  r.dilation = w * trace(L);
  r.tilt = -(L * w);
  r.total = r.partial_t + r.advection + r.dilation + r.tilt;
  return r;
}

Vec3 helmholtz_density_residual(const FlowMap& flow, const MassField& mass, double t,
                                const Vec3& x, double ht, double h) {
  auto v_field = [&](double tt, const Vec3& xx) {
    return vorticity(flow, tt, xx, h) * (1.0 / mass_density(mass, tt, xx));
  };
  const Vec3 V = v_field(t, x);
  const Vec3 dVdt = (v_field(t + ht, x) - v_field(t - ht, x)) * (1.0 / (2.0 * ht));
  const Mat3 JV = numdiff::jacobian([&](const Vec3& p) { return v_field(t, p); }, x, h);
  const Vec3 u = flow_velocity(flow, t, x);
  const Mat3 L = velocity_gradient(flow, t, x, h);
  const Vec3 lie_v = dVdt + JV * u - L * V;
  return lie_v * mass_density(mass, t, x);
}

Vec3 commutation_defect(const EulerianField& s, const FlowMap& flow, double t,
                        const Vec3& x, double ht, double h) {
  if (s.variance() != Variance::scalar)
    throw VarianceError("commutation_defect expects a scalar field");
  const EulerianField grad_s = derived_gradient(s, h);
  const TensorValue route_gradient_first = lie_derivative(grad_s, flow, t, x, ht, h).value;
  const Vec3 route_derivative_first = numdiff::gradient(
      [&](const Vec3& p) { return material_derivative(s, flow, t, p, ht, h); }, x, h);
  return route_gradient_first.as_vec() - route_derivative_first;
}

}  // namespace lieflow
