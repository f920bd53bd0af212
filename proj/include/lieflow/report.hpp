#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lieflow/linalg.hpp"

namespace lieflow {

/// Residuals recorded at one sample site.  `components` carries the named
/// per-column values (see CheckReport::component_names); `magnitude` is the
/// single number the pass/fail decision uses at this sample.
struct SampleResidual {
  double t = 0.0;
  Vec3 x;
  std::vector<double> components;
  double magnitude = 0.0;
};

/// Outcome of one named verification check.  Invariant: pass is true exactly
/// when max_residual <= tolerance.  `runtime_ms` is advisory console
/// information and is never written to report files, which must be
/// byte-identical across reruns.
struct CheckReport {
  std::string name;
  std::string theorem_tag;
  std::string flow;
  std::map<std::string, double> flow_params;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool pass = false;
  std::string note;  // caveats, skip reasons, or the error that aborted the check
  std::vector<std::string> component_names;
  std::vector<SampleResidual> samples;
  double runtime_ms = 0.0;

  void finalize() {
    max_residual = 0.0;
    for (const SampleResidual& s : samples)
      if (s.magnitude > max_residual) max_residual = s.magnitude;
    pass = max_residual <= tolerance;
  }
};

}  // namespace lieflow
