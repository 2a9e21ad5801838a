#pragma once

#include <stdexcept>
#include <string>

namespace ruinadjust {

// Bad parameters or malformed inputs: rejected before any computation runs.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Estimation-stage failures: the data admits no positive root, a bracket
// cannot be formed, an evaluation overflows, or a recursion diverges.
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requested exponential-moment evaluation exceeds double range even after
// max-subtraction stabilization.
struct UnboundedMgfError : EstimationError {
  double t;
  explicit UnboundedMgfError(double t_point)
      : EstimationError("moment generating function unbounded at t = " + std::to_string(t_point)),
        t(t_point) {}
};

// A simulated path left its stable region and produced non-finite values.
struct UnstableModelError : EstimationError {
  using EstimationError::EstimationError;
};

// File ingestion or serialization problems.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ruinadjust
