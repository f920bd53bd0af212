#include "lieflow/transport.hpp"

#include <cmath>
#include <stdexcept>

#include "lieflow/errors.hpp"
#include "lieflow/numdiff.hpp"

namespace lieflow {

std::string_view to_string(Variance v) {
  switch (v) {
    case Variance::scalar: return "scalar";
    case Variance::vector: return "vector";
    case Variance::covector: return "covector";
    case Variance::two_form: return "two_form";
    case Variance::three_form: return "three_form";
    case Variance::matrix: return "matrix";
  }
  return "?";
}

Variance variance_from_string(std::string_view name) {
  if (name == "scalar") return Variance::scalar;
  if (name == "vector") return Variance::vector;
  if (name == "covector") return Variance::covector;
  if (name == "two_form") return Variance::two_form;
  if (name == "three_form") return Variance::three_form;
  if (name == "matrix") return Variance::matrix;
  throw VarianceError("unknown variance '" + std::string(name) + "'");
}

std::size_t component_count(Variance v) {
  switch (v) {
    case Variance::scalar:
    case Variance::three_form:
      return 1;
    case Variance::vector:
    case Variance::covector:
    case Variance::two_form:
      return 3;
    case Variance::matrix:
      return 9;
  }
  return 0;
}

TensorValue::TensorValue(Variance v, std::variant<double, Vec3, Mat3> data)
    : variance_(v), data_(std::move(data)) {
  const bool finite = std::visit(
      [](const auto& d) {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, double>)
          return std::isfinite(d);
        else
          return all_finite(d);
      },
      data_);
  if (!finite)
    throw EvaluationError("non-finite tensor value (" + std::string(to_string(v)) + ")",
                          0.0, Vec3{});
}

TensorValue TensorValue::scalar(double s) { return {Variance::scalar, s}; }
TensorValue TensorValue::vector(const Vec3& v) { return {Variance::vector, v}; }
TensorValue TensorValue::covector(const Vec3& row) { return {Variance::covector, row}; }
TensorValue TensorValue::two_form(const Vec3& axial) { return {Variance::two_form, axial}; }
TensorValue TensorValue::three_form(double density) { return {Variance::three_form, density}; }
TensorValue TensorValue::matrix(const Mat3& m) { return {Variance::matrix, m}; }

TensorValue TensorValue::zero(Variance v) {
  switch (component_count(v)) {
    case 1: return {v, 0.0};
    case 3: return {v, Vec3{}};
    default: return {v, Mat3::zero()};
  }
}

TensorValue TensorValue::from_components(Variance v, std::span<const double> c) {
  if (c.size() != component_count(v))
    throw VarianceError("component count " + std::to_string(c.size()) +
                        " does not match variance " + std::string(to_string(v)));
  switch (component_count(v)) {
    case 1:
      return {v, c[0]};
    case 3:
      return {v, Vec3{c[0], c[1], c[2]}};
    default: {
      Mat3 m;
      for (int i = 0; i < 9; ++i) m.m[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
      return {v, m};
    }
  }
}

double TensorValue::as_scalar() const {
  if (const double* d = std::get_if<double>(&data_)) return *d;
  throw VarianceError("tensor value of variance " + std::string(to_string(variance_)) +
                      " has no scalar data");
}

const Vec3& TensorValue::as_vec() const {
  if (const Vec3* v = std::get_if<Vec3>(&data_)) return *v;
  throw VarianceError("tensor value of variance " + std::string(to_string(variance_)) +
                      " has no 3-component data");
}

const Mat3& TensorValue::as_mat() const {
  if (const Mat3* m = std::get_if<Mat3>(&data_)) return *m;
  throw VarianceError("tensor value of variance " + std::string(to_string(variance_)) +
                      " has no matrix data");
}

std::vector<double> TensorValue::components() const {
  switch (component_count(variance_)) {
    case 1:
      return {as_scalar()};
    case 3: {
      const Vec3& v = as_vec();
      return {v.x, v.y, v.z};
    }
    default: {
      const Mat3& m = as_mat();
      return std::vector<double>(m.m.begin(), m.m.end());
    }
  }
}

double TensorValue::norm() const {
  double s = 0.0;
  for (double c : components()) s += c * c;
  return std::sqrt(s);
}

namespace {

void require_same_variance(const TensorValue& a, const TensorValue& b, const char* op) {
  if (a.variance() != b.variance())
    throw VarianceError(std::string("variance mismatch in '") + op + "': " +
                        std::string(to_string(a.variance())) + " vs " +
                        std::string(to_string(b.variance())));
}

}  // namespace

TensorValue TensorValue::operator+(const TensorValue& o) const {
  require_same_variance(*this, o, "+");
  switch (component_count(variance_)) {
    case 1: return {variance_, as_scalar() + o.as_scalar()};
    case 3: return {variance_, as_vec() + o.as_vec()};
    default: return {variance_, as_mat() + o.as_mat()};
  }
}

TensorValue TensorValue::operator-(const TensorValue& o) const {
  require_same_variance(*this, o, "-");
  switch (component_count(variance_)) {
    case 1: return {variance_, as_scalar() - o.as_scalar()};
    case 3: return {variance_, as_vec() - o.as_vec()};
    default: return {variance_, as_mat() - o.as_mat()};
  }
}

TensorValue TensorValue::operator*(double a) const {
  switch (component_count(variance_)) {
    case 1: return {variance_, as_scalar() * a};
    case 3: return {variance_, as_vec() * a};
    default: return {variance_, as_mat() * a};
  }
}

TensorValue push_forward(const TensorValue& reference_value, const DeformationState& D) {
  switch (reference_value.variance()) {
    case Variance::scalar:
      return TensorValue::scalar(reference_value.as_scalar());
    case Variance::vector:
      return TensorValue::vector(D.F * reference_value.as_vec());
    case Variance::covector:
      return TensorValue::covector(row_times(reference_value.as_vec(), D.F_inv));
    case Variance::two_form:
      return TensorValue::two_form((D.F * reference_value.as_vec()) * (1.0 / D.det_F));
    case Variance::three_form:
      return TensorValue::three_form(reference_value.as_scalar() / D.det_F);
    case Variance::matrix:
      return TensorValue::matrix(D.F * reference_value.as_mat() * D.F_inv);
  }
  throw VarianceError("unhandled variance in push_forward");
}

TensorValue pull_back(const TensorValue& current_value, const DeformationState& D) {
  switch (current_value.variance()) {
    case Variance::scalar:
      return TensorValue::scalar(current_value.as_scalar());
    case Variance::vector:
      return TensorValue::vector(D.F_inv * current_value.as_vec());
    case Variance::covector:
      return TensorValue::covector(row_times(current_value.as_vec(), D.F));
    case Variance::two_form:
      return TensorValue::two_form((D.F_inv * current_value.as_vec()) * D.det_F);
    case Variance::three_form:
      return TensorValue::three_form(current_value.as_scalar() * D.det_F);
    case Variance::matrix:
      return TensorValue::matrix(D.F_inv * current_value.as_mat() * D.F);
  }
  throw VarianceError("unhandled variance in pull_back");
}

EulerianField::EulerianField(Variance v, std::function<TensorValue(double, const Vec3&)> eval,
                             Provenance provenance)
    : variance_(v), eval_(std::move(eval)), provenance_(provenance) {}

TensorValue EulerianField::operator()(double t, const Vec3& x) const {
  if (!eval_) throw std::logic_error("evaluating a default-constructed field");
  TensorValue v = eval_(t, x);
  if (v.variance() != variance_)
    throw VarianceError("field declared " + std::string(to_string(variance_)) +
                        " produced " + std::string(to_string(v.variance())));
  return v;
}

EulerianField constant_field(const TensorValue& value) {
  return {value.variance(), [value](double, const Vec3&) { return value; }};
}

EulerianField field_from_function(Variance v,
                                  std::function<TensorValue(double, const Vec3&)> eval,
                                  Provenance provenance) {
  return {v, std::move(eval), provenance};
}

EulerianField transported_field(const FlowMap& flow, Variance v,
                                std::function<TensorValue(const Vec3&)> reference_field) {
  return {v,
          [flow, v, reference_field](double t, const Vec3& x) {
            const Vec3 X = flow.inverse(t, x);
            const TensorValue ref = reference_field(X);
            if (ref.variance() != v)
              throw VarianceError("reference field variance " +
                                  std::string(to_string(ref.variance())) +
                                  " does not match declared " + std::string(to_string(v)));
            return push_forward(ref, deformation_state(flow, t, X));
          },
          Provenance::transported};
}

EulerianField velocity_field(const FlowMap& flow) {
  return {Variance::vector,
          [flow](double t, const Vec3& x) {
            return TensorValue::vector(flow_velocity(flow, t, x));
          }};
}

EulerianField density_field(const MassField& mass) {
  return {Variance::three_form,
          [mass](double t, const Vec3& x) {
            return TensorValue::three_form(mass_density(mass, t, x));
          }};
}

namespace {

void require_variance(const EulerianField& f, Variance v, const char* role) {
  if (f.variance() != v)
    throw VarianceError(std::string("operand '") + role + "' must be " +
                        std::string(to_string(v)) + ", got " +
                        std::string(to_string(f.variance())));
}

Vec3 scalar_gradient(const EulerianField& s, double t, const Vec3& x, double h) {
  return numdiff::gradient([&](const Vec3& p) { return s(t, p).as_scalar(); }, x, h);
}

}  // namespace

EulerianField derived_gradient(const EulerianField& s, double h) {
  require_variance(s, Variance::scalar, "gradient input");
  return {Variance::covector,
          [s, h](double t, const Vec3& x) {
            return TensorValue::covector(scalar_gradient(s, t, x, h));
          },
          Provenance::derived};
}

EulerianField derived_curl_over_rho(const EulerianField& c, const MassField& mass, double h) {
  require_variance(c, Variance::covector, "curl input");
  return {Variance::vector,
          [c, mass, h](double t, const Vec3& x) {
            const Vec3 w = numdiff::curl(
                [&](const Vec3& p) { return c(t, p).as_vec(); }, x, h);
            return TensorValue::vector(w * (1.0 / mass_density(mass, t, x)));
          },
          Provenance::derived};
}

EulerianField derived_div_rho_j(const EulerianField& j, const MassField& mass, double h) {
  require_variance(j, Variance::vector, "divergence input");
  return {Variance::three_form,
          [j, mass, h](double t, const Vec3& x) {
            const double d = numdiff::divergence(
                [&](const Vec3& p) {
                  return j(t, p).as_vec() * mass_density(mass, t, p);
                },
                x, h);
            return TensorValue::three_form(d);
          },
          Provenance::derived};
}

EulerianField derived_wedge(const EulerianField& alpha, const EulerianField& beta, double h) {
  require_variance(alpha, Variance::scalar, "wedge input alpha");
  require_variance(beta, Variance::scalar, "wedge input beta");
  return {Variance::two_form,
          [alpha, beta, h](double t, const Vec3& x) {
            return TensorValue::two_form(
                cross(scalar_gradient(alpha, t, x, h), scalar_gradient(beta, t, x, h)));
          },
          Provenance::derived};
}

EulerianField product_field(ProductKind kind, const std::vector<EulerianField>& operands) {
  auto need = [&](std::size_t n) {
    if (operands.size() != n)
      throw VarianceError("product expects " + std::to_string(n) + " operands, got " +
                          std::to_string(operands.size()));
  };
  switch (kind) {
    case ProductKind::c_dot_j: {
      need(2);
      const EulerianField c = operands[0], j = operands[1];
      require_variance(c, Variance::covector, "c");
      require_variance(j, Variance::vector, "j");
      return {Variance::scalar,
              [c, j](double t, const Vec3& x) {
                return TensorValue::scalar(dot(c(t, x).as_vec(), j(t, x).as_vec()));
              },
              Provenance::derived};
    }
    case ProductKind::rho_c_j: {
      need(3);
      const EulerianField rho = operands[0], c = operands[1], j = operands[2];
      require_variance(rho, Variance::three_form, "rho");
      require_variance(c, Variance::covector, "c");
      require_variance(j, Variance::vector, "j");
      return {Variance::three_form,
              [rho, c, j](double t, const Vec3& x) {
                return TensorValue::three_form(rho(t, x).as_scalar() *
                                               dot(c(t, x).as_vec(), j(t, x).as_vec()));
              },
              Provenance::derived};
    }
    case ProductKind::j_outer_c: {
      need(2);
      const EulerianField j = operands[0], c = operands[1];
      require_variance(j, Variance::vector, "j");
      require_variance(c, Variance::covector, "c");
      return {Variance::matrix,
              [j, c](double t, const Vec3& x) {
                return TensorValue::matrix(outer(j(t, x).as_vec(), c(t, x).as_vec()));
              },
              Provenance::derived};
    }
    case ProductKind::det_j_outer_c: {
      need(2);
      const EulerianField j = operands[0], c = operands[1];
      require_variance(j, Variance::vector, "j");
      require_variance(c, Variance::covector, "c");
      return {Variance::scalar,
              [j, c](double t, const Vec3& x) {
                return TensorValue::scalar(
                    determinant(outer(j(t, x).as_vec(), c(t, x).as_vec())));
              },
              Provenance::derived};
    }
    case ProductKind::rho_w: {
      need(2);
      const EulerianField rho = operands[0], w = operands[1];
      require_variance(rho, Variance::three_form, "rho");
      require_variance(w, Variance::two_form, "w");
      return {Variance::vector,
              [rho, w](double t, const Vec3& x) {
                return TensorValue::vector(w(t, x).as_vec() * rho(t, x).as_scalar());
              },
              Provenance::derived};
    }
    case ProductKind::rho_c_w: {
      need(3);
      const EulerianField rho = operands[0], c = operands[1], w = operands[2];
      require_variance(rho, Variance::three_form, "rho");
      require_variance(c, Variance::covector, "c");
      require_variance(w, Variance::two_form, "w");
      return {Variance::scalar,
              [rho, c, w](double t, const Vec3& x) {
                return TensorValue::scalar(rho(t, x).as_scalar() *
                                           dot(c(t, x).as_vec(), w(t, x).as_vec()));
              },
              Provenance::derived};
    }
  }
  throw VarianceError("unhandled product kind");
}

}  // namespace lieflow
