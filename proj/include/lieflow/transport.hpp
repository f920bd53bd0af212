#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lieflow/kinematics.hpp"
#include "lieflow/linalg.hpp"

namespace lieflow {

/// How a quantity responds to the flow map.  The tag fixes both the data
/// shape and the transformation rule:
///   scalar      double   s  = s0
///   vector      Vec3     J  = F J0
///   covector    Vec3     C  = C0 F^-1          (components act as a row)
///   two_form    Vec3     W  = F W0 / det F     (axial vector of the 2-form)
///   three_form  double   v  = v0 / det F       (volume density)
///   matrix      Mat3     M  = F M0 F^-1        (mixed (1,1) tensor)
enum class Variance { scalar, vector, covector, two_form, three_form, matrix };

std::string_view to_string(Variance v);
Variance variance_from_string(std::string_view name);
std::size_t component_count(Variance v);  // 1, 3, 3, 3, 1, 9

/// A tensor quantity tagged with its variance.  Shape always matches the
/// tag and every entry is finite; violations raise VarianceError /
/// EvaluationError at construction.
class TensorValue {
 public:
  static TensorValue scalar(double s);
  static TensorValue vector(const Vec3& v);
  static TensorValue covector(const Vec3& row);
  static TensorValue two_form(const Vec3& axial);
  static TensorValue three_form(double density);
  static TensorValue matrix(const Mat3& m);
  static TensorValue zero(Variance v);
  static TensorValue from_components(Variance v, std::span<const double> c);

  Variance variance() const { return variance_; }

  double as_scalar() const;      // scalar or three_form
  const Vec3& as_vec() const;    // vector, covector or two_form
  const Mat3& as_mat() const;    // matrix

  std::vector<double> components() const;
  double norm() const;  // Euclidean over components

  /// Componentwise arithmetic; both operands must share a variance tag.
  TensorValue operator+(const TensorValue& o) const;
  TensorValue operator-(const TensorValue& o) const;
  TensorValue operator*(double a) const;

 private:
  TensorValue(Variance v, std::variant<double, Vec3, Mat3> data);
  Variance variance_;
  std::variant<double, Vec3, Mat3> data_;
};

/// Maps a reference-configuration value to the current configuration using
/// the deformation state, per the variance table above.
TensorValue push_forward(const TensorValue& reference_value, const DeformationState& D);

/// Inverse of push_forward; round-trips are identity up to rounding.
TensorValue pull_back(const TensorValue& current_value, const DeformationState& D);

enum class Provenance { builtin, expression, transported, derived };

/// A time-dependent tensor field on the current configuration.  Evaluation
/// must return the declared variance at every point; mismatches raise
/// VarianceError.
class EulerianField {
 public:
  EulerianField() = default;
  EulerianField(Variance v, std::function<TensorValue(double, const Vec3&)> eval,
                Provenance provenance = Provenance::builtin);

  TensorValue operator()(double t, const Vec3& x) const;
  Variance variance() const { return variance_; }
  Provenance provenance() const { return provenance_; }
  bool valid() const { return static_cast<bool>(eval_); }

 private:
  Variance variance_ = Variance::scalar;
  std::function<TensorValue(double, const Vec3&)> eval_;
  Provenance provenance_ = Provenance::builtin;
};

EulerianField constant_field(const TensorValue& value);
EulerianField field_from_function(Variance v,
                                  std::function<TensorValue(double, const Vec3&)> eval,
                                  Provenance provenance = Provenance::builtin);

/// The field obtained by carrying `reference_field` along the flow:
/// value(t, x) = push_forward(reference_field(inverse(t, x)), F(t, X)).
/// Uses the closed-form deformation gradient when the flow has one.
EulerianField transported_field(const FlowMap& flow, Variance v,
                                std::function<TensorValue(const Vec3&)> reference_field);

/// Velocity of the flow as a vector field.
EulerianField velocity_field(const FlowMap& flow);

/// Mass density as a volume-density (3-form) field.
EulerianField density_field(const MassField& mass);

// Constructors of derived fields.  Built from transported inputs they give
// transported outputs (checked numerically by the verification suites).

/// Gradient of a scalar field as a covector field (central differences).
EulerianField derived_gradient(const EulerianField& s, double h = kSpaceStep);

/// (1/rho) curl of a covector field's component triple, as a vector field.
EulerianField derived_curl_over_rho(const EulerianField& c, const MassField& mass,
                                    double h = kSpaceStep);

/// div(rho J) as a volume-density (3-form) field.
EulerianField derived_div_rho_j(const EulerianField& j, const MassField& mass,
                                double h = kSpaceStep);

/// grad(alpha) x grad(beta) as a 2-form field (axial-vector representation).
EulerianField derived_wedge(const EulerianField& alpha, const EulerianField& beta,
                            double h = kSpaceStep);

/// Pointwise products that compose transported fields into new fields.
///   c_dot_j        (covector, vector)             -> scalar
///   rho_c_j        (three_form, covector, vector) -> three_form
///   j_outer_c      (vector, covector)             -> matrix
///   det_j_outer_c  (vector, covector)             -> scalar (identically 0:
///                  a rank-one matrix has zero determinant, so this check is
///                  vacuously conserved; kept for completeness)
///   rho_w          (three_form, two_form)         -> vector
///   rho_c_w        (three_form, covector, two_form) -> scalar
/// rho_w and rho_c_w are conserved along unit-Jacobian flows only.
enum class ProductKind { c_dot_j, rho_c_j, j_outer_c, det_j_outer_c, rho_w, rho_c_w };

EulerianField product_field(ProductKind kind, const std::vector<EulerianField>& operands);

}  // namespace lieflow
