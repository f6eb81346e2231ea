#include "sspmprk/stability.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "sspmprk/errors.hpp"

namespace sspmprk {

Complex r2(Complex z, double alpha, double beta) {
  const Complex num =
      -2.0 + (2.0 * alpha * beta * beta - 2.0 * alpha * beta + 1.0) * z * z -
      2.0 * beta * (alpha - 1.0) * z;
  const Complex den = 2.0 * (1.0 + (alpha * beta - 1.0) * z) * (beta * z - 1.0);
  if (den == Complex(0.0, 0.0)) throw PoleError("r2: evaluation at a pole");
  return num / den;
}

double r2_limit(double alpha, double beta) {
  if (alpha * beta == 1.0)
    throw UndefinedLimitError("r2_limit: undefined for alpha*beta = 1");
  return (2.0 * alpha * beta * beta - 2.0 * alpha * beta + 1.0) /
         (2.0 * beta * (alpha * beta - 1.0));
}

ParameterRegime classify_sspmprk2(double alpha, double beta) {
  sspmprk2_params(alpha, beta);  // validates, throws ParameterError
  const double tie = 1e-14;
  if (std::abs(alpha - 1.0 / (2.0 * beta)) <= tie ||
      (alpha <= tie && std::abs(beta - 0.5) <= tie))
    return ParameterRegime::UnconditionalMarginalAxis;
  if (alpha > 1.0 / (2.0 * beta)) return ParameterRegime::BoundedRegion;
  return ParameterRegime::UnconditionalStrict;
}

const char* to_string(ParameterRegime regime) {
  switch (regime) {
    case ParameterRegime::BoundedRegion: return "BoundedRegion";
    case ParameterRegime::UnconditionalStrict: return "UnconditionalStrict";
    case ParameterRegime::UnconditionalMarginalAxis: return "UnconditionalMarginalAxis";
  }
  return "?";
}

double imag_axis_margin(double b, double alpha, double beta) {
  return -(2.0 * alpha * beta - 2.0 * beta - 1.0) * (2.0 * alpha * beta - 1.0) *
         (2.0 * beta - 1.0) * b * b * b * b;
}

Complex r3(Complex z, const SSPMPRK3Params& p) {
  const double sb3 = p.beta30 + p.beta31 + p.beta32;
  const double e34 = p.eta3 + p.eta4;
  const Complex d1 = 1.0 - p.beta10 * z;
  const Complex d2 = 1.0 - (p.beta20 + p.beta21) * z;
  const Complex da_den = 1.0 - e34 * z;
  const Complex df = 1.0 - sb3 * z;
  if (d1 == Complex(0.0) || d2 == Complex(0.0) || da_den == Complex(0.0) || df == Complex(0.0))
    throw PoleError("r3: evaluation at a pole");
  const Complex dy1 = 1.0 / d1;
  const Complex drho = -p.n2 + (p.n1 + 2.0 * p.n2) * dy1;
  const Complex P =
      (p.alpha20 + p.beta20 * z + (p.alpha21 + p.beta21 * z) * dy1 -
       (p.beta20 + p.beta21) * z * drho) /
      d2;
  const Complex da =
      (p.eta1 + (p.eta1 + p.eta2) * z * ((p.s - 1.0) * e34 + p.eta3) +
       (p.eta2 + (p.eta1 + p.eta2) * z * (-p.s * e34 + p.eta4)) * dy1) /
      da_den;
  const Complex dsig = p.zeta + p.zeta * P - p.zeta * drho + da;
  return (p.alpha30 + p.beta30 * z + (p.alpha31 + p.beta31 * z) * dy1 +
          (p.alpha32 + p.beta32 * z) * P - z * sb3 * dsig) /
         df;
}

R3Coefficients r3_coeffs(double eta2) {
  if (!(eta2 >= 0.0 && eta2 <= kEta2Max)) {
    std::ostringstream os;
    os << "r3_coeffs: eta2 must lie in [0, " << kEta2Max << "], got " << eta2;
    throw ParameterError(os.str());
  }
  const double e = eta2;
  const double den = 0.47620819268131703 * e - 1.0537480911094114871;
  R3Coefficients c;
  c.a = {(0.47620819268131705757 * e - 1.0537480911094115481) / den,
         (-3.1507612671062001337 * e + 3.9798736646158920698 + 0.61107641837494959323 * e * e) /
             den,
         (2.4343280828365809236 * e - 2.5818776483048969774 - 0.57282016379130601724 * e * e) /
             den,
         (0.6548068883713070549 * e - 0.81603432814746304744 - 0.1292603911580354457 * e * e) /
             den,
         (-0.59574557514538034065 * e + 0.64052974630005292675 + 0.13841284380675759373 * e * e) /
             den};
  c.b = {1.0,
         -4.7768739020212929733 + 1.2832127371313151768 * e,
         6.7270587897458664634 - 2.4860903284764154151 * e,
         -3.7332290665687486456 + 1.5730472371819288192 * e,
         0.71670702950202557447 - 0.32389312216150656421 * e};
  return c;
}

Complex r3_ratio(Complex z, double eta2) {
  const R3Coefficients c = r3_coeffs(eta2);
  Complex num(0.0), den(0.0), zp(1.0);
  for (int j = 0; j <= 4; ++j) {
    num += c.a[j] * zp;
    den += c.b[j] * zp;
    zp *= z;
  }
  if (den == Complex(0.0)) throw PoleError("r3_ratio: evaluation at a pole");
  return num / den;
}

double derive_s(double eta2, Complex z0) {
  const SSPMPRK3Params p0 = sspmprk3_params(eta2, 0.0);
  const SSPMPRK3Params p1 = sspmprk3_params(eta2, 1.0);
  const Complex f0 = r3(z0, p0);
  const Complex f1 = r3(z0, p1);
  const Complex target = r3_ratio(z0, eta2);
  if (f1 == f0)
    throw InconsistencyError("derive_s: sample point does not expose the exponent");
  const double s = ((target - f0) / (f1 - f0)).real();
  const SSPMPRK3Params ps = sspmprk3_params(eta2, s);
  const Complex checkpoints[] = {{-0.1, 0.0}, {-2.0, 0.0}, {-3.0, 0.0}, {-5.0, 0.0},
                                 {-10.0, 0.0}, {-0.5, 0.0}, {-5.0, 1.0}, {-1.0, -3.0},
                                 {-2.0, 2.0},  {-0.5, 0.7}};
  for (const Complex& z : checkpoints) {
    const Complex want = r3_ratio(z, eta2);
    const double resid = std::abs(r3(z, ps) - want) / (1.0 + std::abs(want));
    if (!(resid <= 1e-9)) {
      std::ostringstream os;
      os << "derive_s: nested and coefficient evaluations disagree at z = (" << z.real() << ", "
         << z.imag() << "), residual " << resid;
      throw InconsistencyError(os.str());
    }
  }
  return s;
}

StabilityScan region_scan(const std::function<Complex(Complex)>& r, double re_min, double re_max,
                          double im_min, double im_max, int nx, int ny) {
  if (nx < 2 || ny < 2) throw ParameterError("region_scan: need nx, ny >= 2");
  if (!(re_min < re_max) || !(im_min < im_max))
    throw ParameterError("region_scan: empty rectangle");
  StabilityScan s;
  s.re_min = re_min;
  s.re_max = re_max;
  s.im_min = im_min;
  s.im_max = im_max;
  s.nx = nx;
  s.ny = ny;
  s.magnitudes.resize(static_cast<std::size_t>(nx) * ny);
  s.inside.resize(s.magnitudes.size());
  const double inf = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const Complex z(s.re_at(ix), s.im_at(iy));
      double mag;
      try {
        mag = std::abs(r(z));
        if (!std::isfinite(mag)) mag = inf;
      } catch (const PoleError&) {
        mag = inf;
      }
      const std::size_t k = static_cast<std::size_t>(iy) * nx + ix;
      s.magnitudes[k] = mag;
      s.inside[k] = mag <= 1.0 ? 1 : 0;
    }
  return s;
}

StabilityScan region_scan_r2(double alpha, double beta, double re_min, double re_max, double im_min,
                             double im_max, int nx, int ny) {
  sspmprk2_params(alpha, beta);  // validates
  return region_scan([alpha, beta](Complex z) { return r2(z, alpha, beta); }, re_min, re_max,
                     im_min, im_max, nx, ny);
}

StabilityScan region_scan_r3(const SSPMPRK3Params& p, double re_min, double re_max, double im_min,
                             double im_max, int nx, int ny) {
  return region_scan([p](Complex z) { return r3(z, p); }, re_min, re_max, im_min, im_max, nx, ny);
}

void write_scan_csv(const StabilityScan& scan, std::ostream& os) {
  os << "re,im,abs_r,inside\n";
  char buf[96];
  for (int iy = 0; iy < scan.ny; ++iy)
    for (int ix = 0; ix < scan.nx; ++ix) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d", scan.re_at(ix), scan.im_at(iy),
                    scan.magnitude(ix, iy), scan.is_inside(ix, iy) ? 1 : 0);
      os << buf << '\n';
    }
}

}  // namespace sspmprk
