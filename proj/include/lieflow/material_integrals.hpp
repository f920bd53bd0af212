#pragma once

#include <functional>
#include <span>

#include "lieflow/lie_calculus.hpp"
#include "lieflow/transport.hpp"

namespace lieflow {

/// Closed curve of material points, given as a parametrization of [0, 1]
/// with param(0) = param(1) (gap at most 1e-12).  The parametrization must
/// be smooth as a map of the circle.  At least 8 segments; nodes must be
/// pairwise distinct.
class MaterialCurve {
 public:
  MaterialCurve(std::function<Vec3(double)> param, int n_segments);
  Vec3 point(double s) const { return param_(s); }
  int segments() const { return n_; }

 private:
  std::function<Vec3(double)> param_;
  int n_;
};

/// Surface patch of material points parametrized over the unit square.
/// The formula must extend smoothly slightly beyond [0, 1]^2 (tangent
/// stencils reach up to 2 grid spacings outside).  Orientation is fixed by
/// the parameter order: the positive side is along d(param)/ds1 x d(param)/ds2.
/// The parametrization must be an immersion on the midpoint grid.
class MaterialSurface {
 public:
  MaterialSurface(std::function<Vec3(double, double)> param, int n1, int n2);
  Vec3 point(double s1, double s2) const { return param_(s1, s2); }
  int grid1() const { return n1_; }
  int grid2() const { return n2_; }

 private:
  std::function<Vec3(double, double)> param_;
  int n1_, n2_;
};

/// Volume cell of material points parametrized over the unit cube, with
/// positive Jacobian on the midpoint grid.  Same smooth-extension
/// requirement as MaterialSurface.
class MaterialVolume {
 public:
  MaterialVolume(std::function<Vec3(const Vec3&)> param, int n1, int n2, int n3);
  Vec3 point(const Vec3& s) const { return param_(s); }
  int grid1() const { return n1_; }
  int grid2() const { return n2_; }
  int grid3() const { return n3_; }

 private:
  std::function<Vec3(const Vec3&)> param_;
  int n1_, n2_, n3_;
};

/// Unit cube [0,1]^3 with an identity parametrization.
MaterialVolume unit_cube(int n);

/// Circle of given radius in the plane x3 = height, centered on the axis.
MaterialCurve circle_curve(double radius, double height, int n_segments);

/// Flat disk of given radius in the plane x3 = height (polar parametrization;
/// positive side faces +e3).
MaterialSurface disk_surface(double radius, double height, int n1, int n2);

/// Line integral of a covector field over the image of the curve at time t:
/// the periodic trapezoid rule over the mapped nodes, with tangents from
/// fourth-order central differences of the mapped parametrization at the
/// grid spacing.
double circulation(const EulerianField& c, const FlowMap& flow,
                   const MaterialCurve& curve, double t);

/// Surface integral of a 2-form field over the image of the patch at time
/// t: midpoint rule on the parameter grid; the integrand is the triple
/// product of the axial vector with the two mapped tangents.
double flux(const EulerianField& w, const FlowMap& flow, const MaterialSurface& surface,
            double t);

/// Volume integral of a 3-form density over the image of the cell at time
/// t: midpoint rule; the density is weighted by the mapped Jacobian.
double volume_integral(const EulerianField& v, const FlowMap& flow,
                       const MaterialVolume& volume, double t);

/// Largest excursion of a time-indexed quantity from its value at the first
/// time: max_i |q(t_i) - q(t_0)|.
double invariance_drift(const std::function<double(double)>& quantity,
                        std::span<const double> times);

/// Compares d/dt of a volume integral (centered difference in t) with the
/// volume integral of the Lie derivative of the integrand.  The two agree
/// for any smooth 3-form density, transported or not.
struct IntegralRateCheck {
  double d_dt_integral;
  double integral_of_lie;
  double defect;
};

IntegralRateCheck integral_rate_identity(const EulerianField& v, const FlowMap& flow,
                                         const MaterialVolume& volume, double t,
                                         double ht = kTimeStep);

}  // namespace lieflow
