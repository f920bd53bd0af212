#pragma once

#include <stdexcept>
#include <string>

#include "lieflow/linalg.hpp"

namespace lieflow {

/// A field or velocity evaluation produced a non-finite value, or an input
/// sample sits outside the admissible domain.  Carries the offending point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double t, const Vec3& point)
      : std::runtime_error(what), t_(t), point_(point) {}
  double time() const { return t_; }
  const Vec3& point() const { return point_; }

 private:
  double t_;
  Vec3 point_;
};

/// The deformation gradient determinant fell below the admissibility floor;
/// the map is no longer treated as a diffeomorphism.
class DegenerateMapError : public std::runtime_error {
 public:
  DegenerateMapError(const std::string& what, double det)
      : std::runtime_error(what), det_(det) {}
  double det() const { return det_; }

 private:
  double det_;
};

/// A tensor value was used with the wrong variance tag (e.g. covector data
/// where a vector is required) or with mismatched component shape.
class VarianceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A physical-domain violation: non-positive density, vanishing reference
/// measure, and similar.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run configuration could not be understood (unknown flow or check name,
/// malformed file, missing key).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lieflow
