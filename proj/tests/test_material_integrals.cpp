#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lieflow/flow_map.hpp"
#include "lieflow/kinematics.hpp"
#include "lieflow/material_integrals.hpp"
#include "lieflow/transport.hpp"

using namespace lieflow;

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;

std::vector<FlowMap> catalog_instances() {
  std::vector<FlowMap> flows;
  flows.push_back(make_zero_flow());
  flows.push_back(make_rotation_flow(1.0));
  flows.push_back(make_shear_flow(2.0));
  flows.push_back(make_expansion_flow(0.5));
  flows.push_back(make_cascade_flow());
  return flows;
}

// Unsteady non-affine flow with closed forms, for drift-order tests that an
// affine map would pass trivially.
FlowMap sinusoidal_shear() {
  FlowMap f;
  f.name = "sinusoidal-shear";
  f.forward = [](double t, const Vec3& X) {
    return Vec3{X.x + t * std::sin(X.y), X.y, X.z};
  };
  f.inverse = [](double t, const Vec3& x) {
    return Vec3{x.x - t * std::sin(x.y), x.y, x.z};
  };
  f.velocity = [](double, const Vec3& x) { return Vec3{std::sin(x.y), 0.0, 0.0}; };
  f.deformation = [](double t, const Vec3& X) {
    Mat3 F = Mat3::identity();
    F(0, 1) = t * std::cos(X.y);
    return F;
  };
  f.velocity_jacobian = [](double, const Vec3& x) {
    Mat3 L = Mat3::zero();
    L(0, 1) = std::cos(x.y);
    return L;
  };
  f.steady = true;
  return f;
}

}  // namespace

TEST_CASE("geometry constructors validate their inputs") {
  const auto circle = [](double s) {
    return Vec3{std::cos(kTwoPi * s), std::sin(kTwoPi * s), 0.0};
  };
  CHECK_NOTHROW(MaterialCurve(circle, 8));
  CHECK_THROWS_AS(MaterialCurve(circle, 7), std::invalid_argument);
  // open curve: endpoints disagree
  CHECK_THROWS_AS(MaterialCurve([](double s) { return Vec3{s, 0, 0}; }, 16),
                  std::invalid_argument);
  // collapsed parametrization: nodes coincide
  CHECK_THROWS_AS(MaterialCurve([](double) { return Vec3{1, 2, 3}; }, 16),
                  std::invalid_argument);

  const auto sheet = [](double a, double b) { return Vec3{a, b, 0.0}; };
  CHECK_NOTHROW(MaterialSurface(sheet, 8, 8));
  CHECK_THROWS_AS(MaterialSurface(sheet, 1, 8), std::invalid_argument);
  // rank-deficient parametrization: both tangents parallel
  CHECK_THROWS_AS(MaterialSurface([](double a, double b) { return Vec3{a + b, a + b, 0.0}; },
                                  8, 8),
                  std::invalid_argument);

  CHECK_NOTHROW(unit_cube(4));
  CHECK_THROWS_AS(unit_cube(0), std::invalid_argument);
  // negative-Jacobian cell
  CHECK_THROWS_AS(MaterialVolume([](const Vec3& s) { return Vec3{s.y, s.x, s.z}; }, 4, 4, 4),
                  std::invalid_argument);
}

TEST_CASE("circulation of a carried circulation-generating covector is constant") {
  const FlowMap rot = make_rotation_flow(1.0);
  const EulerianField u0 = transported_field(rot, Variance::covector, [](const Vec3& X) {
    return TensorValue::covector({-X.y, X.x, 0.0});
  });
  const MaterialCurve loop = circle_curve(1.0, 0.0, 512);
  for (double t : {0.0, 0.5, 1.0})
    CHECK(circulation(u0, rot, loop, t) == doctest::Approx(kTwoPi).epsilon(1e-6));
}

TEST_CASE("circulation edge values") {
  const FlowMap zero = make_zero_flow();
  const MaterialCurve loop = circle_curve(1.0, 0.0, 256);
  CHECK(circulation(constant_field(TensorValue::covector({0, 0, 0})), zero, loop, 0.3) == 0.0);

  // exact gradients integrate to zero around any closed loop
  const EulerianField grad = field_from_function(Variance::covector, [](double, const Vec3& x) {
    return TensorValue::covector({x.y, x.x, 0.0});  // grad(x1 x2)
  });
  CHECK(std::abs(circulation(grad, zero, loop, 0.0)) < 1e-10);

  // constant covector on a closed loop
  CHECK(std::abs(circulation(constant_field(TensorValue::covector({1, 2, 3})), zero, loop, 0.0)) <
        1e-10);
}

TEST_CASE("circulation drift stays below tolerance on every catalog flow") {
  const double times[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const MaterialCurve loop = circle_curve(1.0, 0.0, 512);
  for (const FlowMap& flow : catalog_instances()) {
    const EulerianField c = transported_field(flow, Variance::covector, [](const Vec3& X) {
      return TensorValue::covector({-X.y, X.x, 0.1});
    });
    const double drift = invariance_drift(
        [&](double t) { return circulation(c, flow, loop, t); }, times);
    CAPTURE(flow.name);
    CHECK(drift <= 1e-6);
  }
}

TEST_CASE("flux of a carried two-form through a material disk is constant") {
  const FlowMap grow = make_expansion_flow(1.0);
  const EulerianField w = transported_field(grow, Variance::two_form, [](const Vec3&) {
    return TensorValue::two_form({0, 0, 1});
  });
  const MaterialSurface disk = disk_surface(1.0, 0.0, 64, 64);
  for (double t : {0.0, 0.3, 0.7})
    CHECK(flux(w, grow, disk, t) == doctest::Approx(kPi).epsilon(1e-4));

  CHECK(flux(constant_field(TensorValue::two_form({0, 0, 0})), grow, disk, 0.5) == 0.0);

  const FlowMap rot = make_rotation_flow(1.0);
  const EulerianField spun = transported_field(rot, Variance::two_form, [](const Vec3& X) {
    return TensorValue::two_form({0.2 * X.x, 0.0, 1.0});
  });
  const double times[] = {0.0, 0.4, 0.8};
  CHECK(invariance_drift([&](double t) { return flux(spun, rot, disk, t); }, times) < 1e-4);
}

TEST_CASE("flux quadrature converges at better than second order") {
  const FlowMap grow = make_expansion_flow(1.0);
  const EulerianField w = transported_field(grow, Variance::two_form, [](const Vec3&) {
    return TensorValue::two_form({0, 0, 1});
  });
  double err[3];
  const int sizes[3] = {16, 32, 64};
  for (int k = 0; k < 3; ++k) {
    const MaterialSurface disk = disk_surface(1.0, 0.0, sizes[k], sizes[k]);
    err[k] = std::abs(flux(w, grow, disk, 0.5) - kPi);
  }
  const double order01 = std::log2(err[0] / err[1]);
  const double order12 = std::log2(err[1] / err[2]);
  CAPTURE(err[0]);
  CAPTURE(err[1]);
  CAPTURE(err[2]);
  CHECK(order01 >= 2.0);
  CHECK(order12 >= 2.0);
}

TEST_CASE("volume integral of the carried mass density is conserved") {
  const MaterialVolume cell = unit_cube(32);
  for (const FlowMap& flow : catalog_instances()) {
    MassField mass{flow, [](const Vec3&) { return 1.0; }};
    const EulerianField rho = density_field(mass);
    CAPTURE(flow.name);
    CHECK(volume_integral(rho, flow, cell, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
    const double times[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    const double drift = invariance_drift(
        [&](double t) { return volume_integral(rho, flow, cell, t); }, times);
    CHECK(drift <= 1e-5);
  }
}

TEST_CASE("volume integral spot values") {
  const FlowMap zero = make_zero_flow();
  const MaterialVolume cell = unit_cube(32);
  CHECK(volume_integral(constant_field(TensorValue::three_form(0.0)), zero, cell, 1.0) == 0.0);
  const EulerianField ramp = field_from_function(Variance::three_form, [](double, const Vec3& x) {
    return TensorValue::three_form(x.x);
  });
  CHECK(volume_integral(ramp, zero, cell, 0.0) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("invariance drift is the largest excursion from the first sample") {
  const double flat[] = {1.0, 1.0, 1.0};
  CHECK(invariance_drift([](double t) { return t * 0.0 + 1.0; },
                         std::span<const double>(flat, 1)) == 0.0);

  const double times[] = {0.0, 1.0, 2.0};
  const double values[] = {kPi, kPi + 1e-9, kPi - 2e-9};
  const auto lookup = [&](double t) { return values[static_cast<int>(t)]; };
  CHECK(invariance_drift(lookup, times) == doctest::Approx(2.000000165480742e-09).epsilon(1e-6));
}

TEST_CASE("rate of a material volume integral equals the integral of the rate") {
  const EulerianField ramp = field_from_function(Variance::three_form, [](double, const Vec3& x) {
    return TensorValue::three_form(x.x);
  });
  const MaterialVolume cell = unit_cube(16);
  for (const FlowMap& flow : catalog_instances()) {
    const IntegralRateCheck r = integral_rate_identity(ramp, flow, cell, 0.5);
    CAPTURE(flow.name);
    CHECK(r.defect == doctest::Approx(0.0).epsilon(1.0).scale(2e-3));
    CHECK(std::abs(r.d_dt_integral - r.integral_of_lie) == r.defect);
  }

  // transported densities make both sides vanish
  MassField mass{make_shear_flow(2.0), [](const Vec3&) { return 1.0; }};
  const IntegralRateCheck carried =
      integral_rate_identity(density_field(mass), mass.flow, cell, 0.5);
  CHECK(std::abs(carried.d_dt_integral) < 1e-6);
  CHECK(std::abs(carried.integral_of_lie) < 1e-5);
}

TEST_CASE("non-affine flow keeps the material invariants") {
  const FlowMap wave = sinusoidal_shear();
  const double times[] = {0.0, 0.25, 0.5, 0.75, 1.0};

  const EulerianField c = transported_field(wave, Variance::covector, [](const Vec3& X) {
    return TensorValue::covector({-X.y, X.x, 0.0});
  });
  const MaterialCurve loop = circle_curve(1.0, 0.0, 512);
  CHECK(invariance_drift([&](double t) { return circulation(c, wave, loop, t); }, times) <=
        1e-6);

  const EulerianField w = transported_field(wave, Variance::two_form, [](const Vec3&) {
    return TensorValue::two_form({0, 0, 1});
  });
  const MaterialSurface disk = disk_surface(1.0, 0.0, 64, 64);
  CHECK(invariance_drift([&](double t) { return flux(w, wave, disk, t); }, times) <= 1e-4);

  MassField mass{wave, [](const Vec3& X) { return 1.0 + 0.2 * X.y; }};
  const EulerianField rho = density_field(mass);
  const MaterialVolume cell = unit_cube(32);
  CHECK(invariance_drift([&](double t) { return volume_integral(rho, wave, cell, t); }, times) <=
        1e-5);
}
