#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "sspmprk/pds.hpp"

namespace sspmprk {

/// Two-stage second-order scheme parameters. Derived fields:
/// beta20 = 1 - 1/(2 beta) - alpha beta, beta21 = 1/(2 beta),
/// s = (alpha beta^2 - alpha beta + 1) / (beta (1 - alpha beta)).
struct SSPMPRK2Params {
  double alpha = 0.0;
  double beta = 0.0;
  double beta20 = 0.0;
  double beta21 = 0.0;
  double s = 0.0;
};

/// Admissibility: 0 <= alpha <= 1, beta > 0, alpha beta + 1/(2 beta) <= 1.
SSPMPRK2Params sspmprk2_params(double alpha, double beta);

/// Upper end of the admissible eta2 range of the third-order scheme.
constexpr double kEta2Max = 0.37110619221712509;

/// Third-order scheme constant table with free parameter eta2 in
/// [0, kEta2Max] and the a-stage weight exponent s (not fixed by the table;
/// recover it with stability::derive_s).
struct SSPMPRK3Params {
  double eta2 = 0.0;
  double s = 0.0;
  double alpha20 = 0.0, alpha21 = 0.0;
  double alpha30 = 0.0, alpha31 = 0.0, alpha32 = 0.0;
  double beta10 = 0.0, beta20 = 0.0, beta21 = 0.0;
  double beta30 = 0.0, beta31 = 0.0, beta32 = 0.0;
  double zeta = 0.0;
  double eta1 = 0.0, eta3 = 0.0, eta4 = 0.0;
  double n1 = 0.0, n2 = 0.0;
};

SSPMPRK3Params sspmprk3_params(double eta2, double s);

/// One step of either scheme plus its internal stages. The two-stage scheme
/// fills only y1; rho, y2, a, sigma belong to the third-order scheme. All
/// stage vectors except a are strictly positive for positive input.
struct StepRecord {
  Vec y_next;
  Vec y1;
  Vec rho;
  Vec y2;
  Vec a;
  Vec sigma;
};

StepRecord sspmprk2_step(const GeneralPDS& pds, const Vec& y, double dt, const SSPMPRK2Params& p);
StepRecord sspmprk3_step(const GeneralPDS& pds, const Vec& y, double dt, const SSPMPRK3Params& p);

using SchemeParams = std::variant<SSPMPRK2Params, SSPMPRK3Params>;

StepRecord scheme_step(const GeneralPDS& pds, const Vec& y, double dt, const SchemeParams& p);

/// n_steps applications of the stepper; result has n_steps+1 states starting
/// with y0.
std::vector<Vec> integrate(const GeneralPDS& pds, const SchemeParams& p, const Vec& y0, double dt,
                           long n_steps);

/// Smallest n with ||y^n - y_star||_2 < eps, or nullopt once cap steps were
/// taken without reaching it.
std::optional<long> steps_to_tolerance(const GeneralPDS& pds, const SchemeParams& p, const Vec& y0,
                                       double dt, const Vec& y_star, double eps = 2e-2,
                                       long cap = 1000000);

}  // namespace sspmprk
