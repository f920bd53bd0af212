#include "lieflow/conservation.hpp"

#include <cmath>

#include "lieflow/errors.hpp"
#include "lieflow/numdiff.hpp"

namespace lieflow {

double divergence_law_residual(const EulerianField& beta, const MassField& mass,
                               double t, const Vec3& x, double ht, double h) {
  if (beta.variance() != Variance::scalar)
    throw VarianceError("divergence_law_residual expects a scalar field");
  auto rho_beta = [&](double tt, const Vec3& xx) {
    return mass_density(mass, tt, xx) * beta(tt, xx).as_scalar();
  };
  const double rate =
      (rho_beta(t + ht, x) - rho_beta(t - ht, x)) / (2.0 * ht);
  const double div_flux = numdiff::divergence(
      [&](const Vec3& p) {
        return flow_velocity(mass.flow, t, p) * rho_beta(t, p);
      },
      x, h);
  return rate + div_flux;
}

ClebschData make_clebsch_data(std::function<double(double, double)> f,
                              const EulerianField& s, const EulerianField& eta,
                              double h) {
  if (s.variance() != Variance::scalar || eta.variance() != Variance::scalar)
    throw VarianceError("Clebsch potentials must be scalar fields");
  ClebschData data;
  data.f = f;
  data.s = s;
  data.eta = eta;
  data.rho_j = field_from_function(
      Variance::vector,
      [f, s, eta, h](double t, const Vec3& x) {
        const Vec3 grad_s =
            numdiff::gradient([&](const Vec3& p) { return s(t, p).as_scalar(); }, x, h);
        const Vec3 grad_eta =
            numdiff::gradient([&](const Vec3& p) { return eta(t, p).as_scalar(); }, x, h);
        const double weight = f(s(t, x).as_scalar(), eta(t, x).as_scalar());
        return TensorValue::vector(weight * cross(grad_s, grad_eta));
      },
      Provenance::derived);
  return data;
}

CheckReport clebsch_verify(const ClebschData& data, const MassField& mass,
                           std::span<const std::pair<double, Vec3>> samples,
                           double tolerance) {
  CheckReport report;
  report.name = "clebsch";
  report.theorem_tag = "clebsch-representation";
  report.flow = mass.flow.name;
  for (const auto& [k, v] : mass.flow.params) report.flow_params[k] = v;
  report.tolerance = tolerance;
  report.component_names = {"div_rho_j", "grad_s_dot_j", "material_d_s",
                            "material_d_eta", "lie_j"};

  const EulerianField j_field = field_from_function(
      Variance::vector,
      [data, mass](double t, const Vec3& x) {
        const double rho = mass_density(mass, t, x);
        if (rho <= 0.0) throw DomainError("density must stay positive");
        return TensorValue::vector(data.rho_j(t, x).as_vec() * (1.0 / rho));
      },
      Provenance::derived);

  for (const auto& [t, x] : samples) {
    const double rho = mass_density(mass, t, x);
    if (rho <= 0.0) throw DomainError("density must stay positive at a sample point");

    SampleResidual sr;
    sr.t = t;
    sr.x = x;
    const double div_rho_j = numdiff::divergence(
        [&](const Vec3& p) { return data.rho_j(t, p).as_vec(); }, x);
    const Vec3 grad_s = numdiff::gradient(
        [&](const Vec3& p) { return data.s(t, p).as_scalar(); }, x);
    const Vec3 j = j_field(t, x).as_vec();
    const double grad_s_dot_j = dot(grad_s, j);
    const double ds = material_derivative(data.s, mass.flow, t, x);
    const double deta = material_derivative(data.eta, mass.flow, t, x);
    const double lie_j = lie_derivative(j_field, mass.flow, t, x).value.norm();

    sr.components = {div_rho_j, grad_s_dot_j, ds, deta, lie_j};
    sr.magnitude = std::max({std::fabs(div_rho_j), std::fabs(grad_s_dot_j), std::fabs(ds),
                             std::fabs(deta), lie_j});
    report.samples.push_back(std::move(sr));
  }
  report.finalize();
  return report;
}

double charge_conservation_residual(const ChargeField& charge, double t, const Vec3& x,
                                    double ht, double h) {
  auto q = [&](double tt, const Vec3& xx) {
    const Vec3 X = charge.flow.inverse(tt, xx);
    const double q0 = charge.q0(X);
    if (!std::isfinite(q0))
      throw EvaluationError("reference charge density is non-finite", tt, xx);
    return q0 / deformation_state(charge.flow, tt, X).det_F;
  };
  const double rate = (q(t + ht, x) - q(t - ht, x)) / (2.0 * ht);
  const double div_flux = numdiff::divergence(
      [&](const Vec3& p) { return flow_velocity(charge.flow, t, p) * q(t, p); }, x, h);
  return rate + div_flux;
}

Vec3 electric_pullback(const EulerianField& d, const FlowMap& flow, double t,
                       const Vec3& x) {
  if (d.variance() != Variance::two_form && d.variance() != Variance::vector)
    throw VarianceError("electric_pullback expects three vector components");
  const Vec3 X = flow.inverse(t, x);
  const DeformationState D = deformation_state(flow, t, X);
  return (D.F_inv * d(t, x).as_vec()) * D.det_F;
}

double electric_pullback_time_variation(const EulerianField& d, const FlowMap& flow,
                                        const Vec3& X, std::span<const double> times) {
  if (times.empty())
    throw std::invalid_argument("time variation needs at least one sample time");
  auto pulled = [&](double t) {
    const Vec3 x = flow.forward(t, X);
    return electric_pullback(d, flow, t, x);
  };
  const Vec3 first = pulled(times[0]);
  double variation = 0.0;
  for (double t : times) variation = std::max(variation, norm(pulled(t) - first));
  return variation;
}

InductionResidual induction_residual(const EulerianField& h_field, const FlowMap& flow,
                                     double t, const Vec3& x, double ht, double h) {
  if (h_field.variance() != Variance::two_form)
    throw VarianceError("induction_residual expects a 2-form field");
  auto value = [&](double tt, const Vec3& xx) { return h_field(tt, xx).as_vec(); };

  const Vec3 H = value(t, x);
  const Vec3 dH_dt = (value(t + ht, x) - value(t - ht, x)) * (1.0 / (2.0 * ht));
  const Mat3 JH = numdiff::jacobian([&](const Vec3& p) { return value(t, p); }, x, h);
  const Vec3 u = flow_velocity(flow, t, x);
  const Mat3 L = velocity_gradient(flow, t, x, h);

  InductionResidual out;
  out.residual = dH_dt + JH * u + H * trace(L) - L * H;
  out.div_h = JH(0, 0) + JH(1, 1) + JH(2, 2);
  return out;
}

}  // namespace lieflow
