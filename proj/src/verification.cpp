#include "sspmprk/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sspmprk/errors.hpp"

namespace sspmprk {

double fd_step(const Vec& y_star) { return 1e-6 * std::max(1.0, inf_norm(y_star)); }

Mat fd_jacobian(const std::function<Vec(const Vec&)>& step, const Vec& y_star, double h) {
  const int n = static_cast<int>(y_star.size());
  if (!(h > 0.0)) throw ParameterError("fd_jacobian: h must be positive");
  for (double v : y_star)
    if (!(v > 0.0)) throw DomainError("fd_jacobian: y_star must be strictly positive");
  for (double v : y_star)
    if (!(v - h > 0.0))
      throw StepSizeError("fd_jacobian: perturbation leaves the positive orthant, reduce h");
  Mat j(n, n);
  Vec yp = y_star, ym = y_star;
  for (int c = 0; c < n; ++c) {
    yp[c] = y_star[c] + h;
    ym[c] = y_star[c] - h;
    const Vec fp = step(yp);
    const Vec fm = step(ym);
    if (static_cast<int>(fp.size()) != n || static_cast<int>(fm.size()) != n)
      throw DimensionError("fd_jacobian: step map changed the dimension");
    for (int r = 0; r < n; ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
    yp[c] = y_star[c];
    ym[c] = y_star[c];
  }
  return j;
}

Mat analytic_jacobian_sspmprk2(const LinearPDS& sys, double dt, const SSPMPRK2Params& p) {
  const int n = sys.dim;
  const Mat id = Mat::identity(n);
  const Mat dtA = dt * sys.A;
  const double ab1 = 1.0 - p.alpha * p.beta;
  const double c1 = (p.s - 1.0) * ab1 + p.beta20;
  const double c2 = -p.s * ab1 + p.beta21;
  // (a I + c2 dt A) and (I - b dt A)^-1 commute (both rational in A)
  const Mat inner = lu_solve(id - p.beta * dtA, p.alpha * id + c2 * dtA);
  const Mat bracket = (1.0 - p.alpha) * id + c1 * dtA + inner;
  return lu_solve(id - ab1 * dtA, bracket);
}

const char* to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::StableNonHyperbolic: return "StableNonHyperbolic";
    case StabilityVerdict::Unstable: return "Unstable";
    case StabilityVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

StabilityVerdict stability_verdict(const Mat& j, const std::vector<Vec>& kernel_basis,
                                   double tol) {
  for (std::size_t q = 0; q < kernel_basis.size(); ++q) {
    const Vec& v = kernel_basis[q];
    Vec jv = mat_vec(j, v);
    for (std::size_t i = 0; i < v.size(); ++i) jv[i] -= v[i];
    const double resid = two_norm(jv) / two_norm(v);
    if (!(resid <= tol)) {
      std::ostringstream os;
      os << "stability_verdict: kernel direction " << q + 1 << " is not fixed, residual " << resid;
      throw ContractViolationError(os.str());
    }
  }
  std::vector<Complex> eigs = eigenvalues(j);
  for (std::size_t q = 0; q < kernel_basis.size(); ++q) {
    auto nearest = std::min_element(eigs.begin(), eigs.end(), [](Complex a, Complex b) {
      return std::abs(a - 1.0) < std::abs(b - 1.0);
    });
    if (nearest == eigs.end() || std::abs(*nearest - 1.0) > tol)
      throw ContractViolationError(
          "stability_verdict: fewer unit eigenvalues than kernel directions");
    eigs.erase(nearest);
  }
  bool inconclusive = false;
  for (Complex lam : eigs) {
    const double m = std::abs(lam);
    if (m > 1.0 + tol) return StabilityVerdict::Unstable;
    if (m >= 1.0 - tol) inconclusive = true;
  }
  return inconclusive ? StabilityVerdict::Inconclusive : StabilityVerdict::StableNonHyperbolic;
}

JacobianReport jacobian_report(const Mat& j, const std::vector<Vec>& kernel_basis) {
  JacobianReport rep;
  rep.matrix = j;
  rep.eigenvalues = eigenvalues(j);
  rep.spectral_radius = 0.0;
  for (Complex z : rep.eigenvalues) rep.spectral_radius = std::max(rep.spectral_radius, std::abs(z));
  for (const Vec& v : kernel_basis) {
    Vec jv = mat_vec(j, v);
    for (std::size_t i = 0; i < v.size(); ++i) jv[i] -= v[i];
    rep.kernel_residuals.push_back(two_norm(jv) / two_norm(v));
  }
  return rep;
}

}  // namespace sspmprk
