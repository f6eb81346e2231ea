#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>

#include "sspmprk/schemes.hpp"

namespace sspmprk {

/// Linear stability function of the two-stage scheme, a rational function
/// with both poles in the right half plane for admissible parameters.
Complex r2(Complex z, double alpha, double beta);

/// Limit of r2(z) for z -> -infinity along the reals.
double r2_limit(double alpha, double beta);

/// How the parameter choice shapes the stability region:
/// BoundedRegion when alpha > 1/(2 beta) (region bounded, scheme only
/// conditionally stable), UnconditionalStrict when |r2| < 1 on the open left
/// half plane minus the origin, UnconditionalMarginalAxis when |r2| = 1 on
/// the whole imaginary axis (alpha = 1/(2 beta), or the corner (0, 1/2)).
enum class ParameterRegime { BoundedRegion, UnconditionalStrict, UnconditionalMarginalAxis };

ParameterRegime classify_sspmprk2(double alpha, double beta);
const char* to_string(ParameterRegime regime);

/// Signed product whose sign equals sign(|r2(ib)|^2 - 1) for b != 0; zero on
/// the marginal parameter set.
double imag_axis_margin(double b, double alpha, double beta);

/// Linear stability function of the third-order scheme, evaluated in nested
/// form through the stage response functions. Affine in p.s for fixed z.
Complex r3(Complex z, const SSPMPRK3Params& p);

/// Degree-4 numerator and denominator coefficients of r3 as explicit
/// functions of eta2, normalized to b0 = 1. Independent oracle for the
/// nested evaluation.
struct R3Coefficients {
  std::array<double, 5> a{};
  std::array<double, 5> b{};
};

R3Coefficients r3_coeffs(double eta2);

/// Coefficient-table evaluation of r3 (ratio of the two quartics).
Complex r3_ratio(Complex z, double eta2);

/// Recovers the a-stage exponent s by matching the nested r3 against the
/// coefficient ratio at z0 (the match is a single linear equation in s),
/// then cross-checks the two evaluations at 10 fixed points. Throws
/// InconsistencyError when any checkpoint disagrees beyond 1e-9 relative.
double derive_s(double eta2, Complex z0 = Complex(-1.0, 0.0));

/// |R| sampled on a rectangle in the complex plane. Row-major over rows of
/// constant imaginary part: index(ix, iy) = iy * nx + ix. Poles carry
/// +infinity magnitude and count as outside.
struct StabilityScan {
  double re_min = 0.0, re_max = 0.0;
  double im_min = 0.0, im_max = 0.0;
  int nx = 0, ny = 0;
  std::vector<double> magnitudes;
  std::vector<std::uint8_t> inside;

  double re_at(int ix) const { return re_min + (re_max - re_min) * ix / (nx - 1); }
  double im_at(int iy) const { return im_min + (im_max - im_min) * iy / (ny - 1); }
  double magnitude(int ix, int iy) const { return magnitudes[static_cast<std::size_t>(iy) * nx + ix]; }
  bool is_inside(int ix, int iy) const { return inside[static_cast<std::size_t>(iy) * nx + ix] != 0; }
};

StabilityScan region_scan(const std::function<Complex(Complex)>& r, double re_min, double re_max,
                          double im_min, double im_max, int nx, int ny);
StabilityScan region_scan_r2(double alpha, double beta, double re_min, double re_max, double im_min,
                             double im_max, int nx, int ny);
StabilityScan region_scan_r3(const SSPMPRK3Params& p, double re_min, double re_max, double im_min,
                             double im_max, int nx, int ny);

/// CSV with header re,im,abs_r,inside, one row per grid point, 17
/// significant digits.
void write_scan_csv(const StabilityScan& scan, std::ostream& os);

}  // namespace sspmprk
