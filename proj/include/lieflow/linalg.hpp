#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace lieflow {

/// Fixed-size 3-vector. Used for positions, velocities, vector fields,
/// covector components (acting from the left) and axial vectors of 2-forms.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double a) { x *= a; y *= a; z *= a; return *this; }
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { a += b; return a; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { a -= b; return a; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec3& a) {
  return std::max({std::fabs(a.x), std::fabs(a.y), std::fabs(a.z)});
}

inline bool all_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Scalar triple product a . (b x c); equals the determinant of the matrix
/// with columns a, b, c.  A 2-form with axial vector W evaluates on a pair
/// of tangents (v1, v2) as triple(W, v1, v2).
constexpr double triple(const Vec3& a, const Vec3& b, const Vec3& c) {
  return dot(a, cross(b, c));
}

/// 3x3 matrix, row-major.  Used for deformation gradients, velocity
/// gradients and mixed (1,1) tensor fields.
struct Mat3 {
  std::array<double, 9> m{};  // zero-initialised

  static constexpr Mat3 identity() {
    Mat3 r;
    r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return r;
  }
  static constexpr Mat3 zero() { return Mat3{}; }
  static constexpr Mat3 diagonal(double a, double b, double c) {
    Mat3 r;
    r.m = {a, 0, 0, 0, b, 0, 0, 0, c};
    return r;
  }

  constexpr double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
  double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

  Mat3& operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m[i] += o.m[i];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m[i] -= o.m[i];
    return *this;
  }
  Mat3& operator*=(double a) {
    for (auto& v : m) v *= a;
    return *this;
  }
};

inline Mat3 operator+(Mat3 a, const Mat3& b) { a += b; return a; }
inline Mat3 operator-(Mat3 a, const Mat3& b) { a -= b; return a; }
inline Mat3 operator*(double s, Mat3 a) { a *= s; return a; }
inline Mat3 operator*(Mat3 a, double s) { a *= s; return a; }

inline Vec3 operator*(const Mat3& A, const Vec3& v) {
  return {A(0, 0) * v.x + A(0, 1) * v.y + A(0, 2) * v.z,
          A(1, 0) * v.x + A(1, 1) * v.y + A(1, 2) * v.z,
          A(2, 0) * v.x + A(2, 1) * v.y + A(2, 2) * v.z};
}

/// Row covector times matrix: returns r^T A as a component triple.
inline Vec3 row_times(const Vec3& r, const Mat3& A) {
  return {r.x * A(0, 0) + r.y * A(1, 0) + r.z * A(2, 0),
          r.x * A(0, 1) + r.y * A(1, 1) + r.z * A(2, 1),
          r.x * A(0, 2) + r.y * A(1, 2) + r.z * A(2, 2)};
}

inline Mat3 operator*(const Mat3& A, const Mat3& B) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j) + A(i, 2) * B(2, j);
  return r;
}

inline Mat3 transpose(const Mat3& A) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = A(j, i);
  return r;
}

inline double trace(const Mat3& A) { return A(0, 0) + A(1, 1) + A(2, 2); }

inline double determinant(const Mat3& A) {
  return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
         A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
         A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
}

/// Inverse by adjugate over determinant.  The caller guards against
/// near-singular input; no floor is applied here.
inline Mat3 inverse(const Mat3& A) {
  const double d = determinant(A);
  Mat3 r;
  r(0, 0) = (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) / d;
  r(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) / d;
  r(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) / d;
  r(1, 0) = (A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2)) / d;
  r(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) / d;
  r(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) / d;
  r(2, 0) = (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0)) / d;
  r(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) / d;
  r(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / d;
  return r;
}

inline double frobenius_norm(const Mat3& A) {
  double s = 0.0;
  for (double v : A.m) s += v * v;
  return std::sqrt(s);
}

inline bool all_finite(const Mat3& A) {
  for (double v : A.m)
    if (!std::isfinite(v)) return false;
  return true;
}

inline Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

/// Sums a sequence pairwise (recursive halving).  Quadrature accumulators
/// use this so that results do not depend on traversal incidentals and
/// rounding stays O(log n).
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double t : v) s += t;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace lieflow
