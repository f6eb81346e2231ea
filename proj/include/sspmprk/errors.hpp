#pragma once

#include <stdexcept>
#include <string>

namespace sspmprk {

/// Scheme or classifier parameters outside their admissible set.
struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched or non-square dimensions.
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pivot below threshold in a direct solve.
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterative eigenvalue computation hit its sweep cap.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nonpositive or nonfinite value where a strictly positive one is required.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Stability function evaluated at one of its poles.
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Closed-form limit does not exist for these parameters.
struct UndefinedLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Step-size calibration target is not reachable along the given eigenvalue ray.
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A documented contract (fixed-point, conservation, kernel) failed at runtime.
struct ContractViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Stacked steady-state system is rank deficient.
struct UnderdeterminedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite-difference perturbation leaves the positive orthant.
struct StepSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sspmprk
