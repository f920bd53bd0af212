#include "lieflow/material_integrals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lieflow/errors.hpp"

namespace lieflow {

namespace {

double wrap_unit(double s) { return s - std::floor(s); }

/// Fourth-order central difference of a curve in one parameter.
template <class F>
Vec3 tangent4(F&& f, double s, double h) {
  return (-1.0 * f(s + 2.0 * h) + 8.0 * f(s + h) - 8.0 * f(s - h) + f(s - 2.0 * h)) *
         (1.0 / (12.0 * h));
}

void require_field_variance(const EulerianField& f, Variance v, const char* what) {
  if (f.variance() != v)
    throw VarianceError(std::string(what) + " expects a " + std::string(to_string(v)) +
                        " field, got " + std::string(to_string(f.variance())));
}

}  // namespace

MaterialCurve::MaterialCurve(std::function<Vec3(double)> param, int n_segments)
    : param_(std::move(param)), n_(n_segments) {
  if (!param_) throw std::invalid_argument("curve parametrization is empty");
  if (n_ < 8) throw std::invalid_argument("material curve needs at least 8 segments");
  const Vec3 gap = param_(0.0) - param_(1.0);
  if (norm(gap) > 1e-12)
    throw std::invalid_argument("curve is not closed: |param(0) - param(1)| = " +
                                std::to_string(norm(gap)));
  std::vector<Vec3> nodes(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) nodes[static_cast<std::size_t>(i)] = param_(double(i) / n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (norm(nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)]) < 1e-12)
        throw std::invalid_argument("curve nodes " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
}

MaterialSurface::MaterialSurface(std::function<Vec3(double, double)> param, int n1, int n2)
    : param_(std::move(param)), n1_(n1), n2_(n2) {
  if (!param_) throw std::invalid_argument("surface parametrization is empty");
  if (n1_ < 2 || n2_ < 2)
    throw std::invalid_argument("surface grid needs at least 2 cells per direction");
  const double h1 = 1.0 / n1_, h2 = 1.0 / n2_;
  for (int i = 0; i < n1_; ++i) {
    for (int j = 0; j < n2_; ++j) {
      const double s1 = (i + 0.5) * h1, s2 = (j + 0.5) * h2;
      const Vec3 t1 = tangent4([&](double q) { return param_(q, s2); }, s1, h1);
      const Vec3 t2 = tangent4([&](double q) { return param_(s1, q); }, s2, h2);
      if (norm(cross(t1, t2)) < 1e-12)
        throw std::invalid_argument("surface parametrization is degenerate at grid node (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }
}

MaterialVolume::MaterialVolume(std::function<Vec3(const Vec3&)> param, int n1, int n2, int n3)
    : param_(std::move(param)), n1_(n1), n2_(n2), n3_(n3) {
  if (!param_) throw std::invalid_argument("volume parametrization is empty");
  if (n1_ < 2 || n2_ < 2 || n3_ < 2)
    throw std::invalid_argument("volume grid needs at least 2 cells per direction");
  const double h1 = 1.0 / n1_, h2 = 1.0 / n2_, h3 = 1.0 / n3_;
  for (int i = 0; i < n1_; ++i) {
    for (int j = 0; j < n2_; ++j) {
      for (int k = 0; k < n3_; ++k) {
        const Vec3 s{(i + 0.5) * h1, (j + 0.5) * h2, (k + 0.5) * h3};
        const Vec3 t1 = tangent4([&](double q) { return param_({q, s.y, s.z}); }, s.x, h1);
        const Vec3 t2 = tangent4([&](double q) { return param_({s.x, q, s.z}); }, s.y, h2);
        const Vec3 t3 = tangent4([&](double q) { return param_({s.x, s.y, q}); }, s.z, h3);
        if (triple(t1, t2, t3) < 1e-12)
          throw std::invalid_argument("volume parametrization Jacobian is not positive at (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ", " +
                                      std::to_string(k) + ")");
      }
    }
  }
}

MaterialVolume unit_cube(int n) {
  return MaterialVolume([](const Vec3& s) { return s; }, n, n, n);
}

MaterialCurve circle_curve(double radius, double height, int n_segments) {
  return MaterialCurve(
      [radius, height](double s) {
        const double a = 2.0 * std::numbers::pi * s;
        return Vec3{radius * std::cos(a), radius * std::sin(a), height};
      },
      n_segments);
}

MaterialSurface disk_surface(double radius, double height, int n1, int n2) {
  return MaterialSurface(
      [radius, height](double s1, double s2) {
        const double a = 2.0 * std::numbers::pi * s2;
        return Vec3{radius * s1 * std::cos(a), radius * s1 * std::sin(a), height};
      },
      n1, n2);
}

double circulation(const EulerianField& c, const FlowMap& flow,
                   const MaterialCurve& curve, double t) {
  require_field_variance(c, Variance::covector, "circulation");
  const int n = curve.segments();
  const double ds = 1.0 / n;
  auto mapped = [&](double s) { return flow.forward(t, curve.point(wrap_unit(s))); };
  std::vector<double> contributions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = i * ds;
    const Vec3 x = mapped(s);
    const Vec3 tangent = tangent4(mapped, s, ds);
    contributions[static_cast<std::size_t>(i)] = dot(c(t, x).as_vec(), tangent) * ds;
  }
  return pairwise_sum(contributions);
}

double flux(const EulerianField& w, const FlowMap& flow, const MaterialSurface& surface,
            double t) {
  require_field_variance(w, Variance::two_form, "flux");
  const int n1 = surface.grid1(), n2 = surface.grid2();
  const double h1 = 1.0 / n1, h2 = 1.0 / n2;
  std::vector<double> contributions(static_cast<std::size_t>(n1) * n2);
  std::size_t idx = 0;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const double s1 = (i + 0.5) * h1, s2 = (j + 0.5) * h2;
      auto mapped = [&](double a, double b) { return flow.forward(t, surface.point(a, b)); };
      const Vec3 x = mapped(s1, s2);
      const Vec3 t1 = tangent4([&](double q) { return mapped(q, s2); }, s1, h1);
      const Vec3 t2 = tangent4([&](double q) { return mapped(s1, q); }, s2, h2);
      contributions[idx++] = triple(w(t, x).as_vec(), t1, t2) * h1 * h2;
    }
  }
  return pairwise_sum(contributions);
}

double volume_integral(const EulerianField& v, const FlowMap& flow,
                       const MaterialVolume& volume, double t) {
  require_field_variance(v, Variance::three_form, "volume_integral");
  const int n1 = volume.grid1(), n2 = volume.grid2(), n3 = volume.grid3();
  const double h1 = 1.0 / n1, h2 = 1.0 / n2, h3 = 1.0 / n3;
  std::vector<double> contributions(static_cast<std::size_t>(n1) * n2 * n3);
  std::size_t idx = 0;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      for (int k = 0; k < n3; ++k) {
        const Vec3 s{(i + 0.5) * h1, (j + 0.5) * h2, (k + 0.5) * h3};
        auto mapped = [&](const Vec3& q) { return flow.forward(t, volume.point(q)); };
        const Vec3 x = mapped(s);
        const Vec3 t1 = tangent4([&](double q) { return mapped({q, s.y, s.z}); }, s.x, h1);
        const Vec3 t2 = tangent4([&](double q) { return mapped({s.x, q, s.z}); }, s.y, h2);
        const Vec3 t3 = tangent4([&](double q) { return mapped({s.x, s.y, q}); }, s.z, h3);
        contributions[idx++] = v(t, x).as_scalar() * triple(t1, t2, t3) * h1 * h2 * h3;
      }
    }
  }
  return pairwise_sum(contributions);
}

double invariance_drift(const std::function<double(double)>& quantity,
                        std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("invariance_drift needs at least one time");
  const double q0 = quantity(times[0]);
  double drift = 0.0;
  for (double t : times) drift = std::max(drift, std::fabs(quantity(t) - q0));
  return drift;
}

IntegralRateCheck integral_rate_identity(const EulerianField& v, const FlowMap& flow,
                                         const MaterialVolume& volume, double t,
                                         double ht) {
  require_field_variance(v, Variance::three_form, "integral_rate_identity");
  auto integral = [&](double tau) { return volume_integral(v, flow, volume, tau); };
  const double rate = (integral(t + ht) - integral(t - ht)) / (2.0 * ht);

  const EulerianField lie_of_v = field_from_function(
      Variance::three_form,
      [v, flow](double tt, const Vec3& xx) {
        return lie_derivative(v, flow, tt, xx).value;
      },
      Provenance::derived);
  const double lie_integral = volume_integral(lie_of_v, flow, volume, t);

  return {rate, lie_integral, std::fabs(rate - lie_integral)};
}

}  // namespace lieflow
