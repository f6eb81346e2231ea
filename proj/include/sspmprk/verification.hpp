#pragma once

#include <functional>

#include "sspmprk/pds.hpp"
#include "sspmprk/schemes.hpp"

namespace sspmprk {

/// Default central-difference step: 1e-6 * max(1, inf_norm(y_star)).
double fd_step(const Vec& y_star);

/// Central-difference Jacobian of a one-step map at y_star (column i from
/// step(y + h e_i) and step(y - h e_i)). Throws StepSizeError when a
/// perturbed state leaves the positive orthant.
Mat fd_jacobian(const std::function<Vec(const Vec&)>& step, const Vec& y_star, double h);

/// Closed-form Jacobian of the two-stage scheme's one-step map at any
/// positive steady state of the linear system (state independent):
/// (I - (1-ab) dt A)^-1 [ (1-a) I + dt A ((s-1)(1-ab) + b20)
///                        + (a I + dt A (-s (1-ab) + b21)) (I - b dt A)^-1 ].
Mat analytic_jacobian_sspmprk2(const LinearPDS& sys, double dt, const SSPMPRK2Params& p);

enum class StabilityVerdict { StableNonHyperbolic, Unstable, Inconclusive };
const char* to_string(StabilityVerdict v);

/// Fixed-point stability from the one-step Jacobian. Verifies (J - I) v = 0
/// on every kernel direction (ContractViolationError beyond tol), removes one
/// eigenvalue within tol of 1 per kernel direction, and judges the rest:
/// all |lambda| < 1 - tol -> StableNonHyperbolic, any |lambda| > 1 + tol ->
/// Unstable, otherwise Inconclusive (moduli in the tol band around 1).
StabilityVerdict stability_verdict(const Mat& j, const std::vector<Vec>& kernel_basis,
                                   double tol = 1e-6);

struct JacobianReport {
  Mat matrix;
  std::vector<Complex> eigenvalues;
  double spectral_radius = 0.0;
  std::vector<double> kernel_residuals;
};

JacobianReport jacobian_report(const Mat& j, const std::vector<Vec>& kernel_basis);

}  // namespace sspmprk
