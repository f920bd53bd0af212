#pragma once

#include <utility>

#include "lieflow/linalg.hpp"

namespace lieflow {

/// Default step sizes and floors for the finite-difference stencils.
/// Central differences with these steps give O(1e-8) truncation on fields
/// with O(1) third derivatives, comfortably inside every stated tolerance.
inline constexpr double kSpaceStep = 1e-4;
inline constexpr double kTimeStep = 1e-4;
inline constexpr double kDetFloor = 1e-10;

namespace numdiff {

/// d/dt of a scalar- or vector-valued callable, central difference.
template <class F>
auto time_derivative(F&& f, double t, double h = kTimeStep) {
  return (f(t + h) - f(t - h)) * (1.0 / (2.0 * h));
}

/// Gradient of f : R^3 -> R, central differences, one axis at a time.
template <class F>
Vec3 gradient(F&& f, const Vec3& x, double h = kSpaceStep) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

/// Jacobian of f : R^3 -> R^3; J(i,j) = d f_i / d x_j.
template <class F>
Mat3 jacobian(F&& f, const Vec3& x, double h = kSpaceStep) {
  Mat3 J;
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vec3 d = (f(xp) - f(xm)) * (1.0 / (2.0 * h));
    J(0, j) = d.x;
    J(1, j) = d.y;
    J(2, j) = d.z;
  }
  return J;
}

template <class F>
double divergence(F&& f, const Vec3& x, double h = kSpaceStep) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    s += (f(xp)[i] - f(xm)[i]) / (2.0 * h);
  }
  return s;
}

template <class F>
Vec3 curl(F&& f, const Vec3& x, double h = kSpaceStep) {
  const Mat3 J = jacobian(std::forward<F>(f), x, h);
  return {J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1)};
}

/// Curl read off an analytic velocity gradient.
inline Vec3 curl_from_jacobian(const Mat3& J) {
  return {J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1)};
}

}  // namespace numdiff
}  // namespace lieflow
