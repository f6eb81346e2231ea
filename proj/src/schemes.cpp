#include "sspmprk/schemes.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "sspmprk/errors.hpp"

namespace sspmprk {

namespace {

void check_state(const GeneralPDS& pds, const Vec& y, double dt, const char* who) {
  if (pds.dim != static_cast<int>(y.size()))
    throw DimensionError(std::string(who) + ": state length does not match system dimension");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ParameterError(std::string(who) + ": dt must be positive and finite");
  for (double v : y)
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError(std::string(who) + ": state must be strictly positive");
}

Mat production_matrix(const GeneralPDS& pds, const Vec& y) {
  const int n = pds.dim;
  Mat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) r(i, j) = pds.p(i, j, y);
  return r;
}

Mat scale(double c, const Mat& r0) {
  Mat r(r0.rows, r0.cols);
  for (std::size_t k = 0; k < r.data.size(); ++k) r.data[k] = c * r0.data[k];
  return r;
}

Mat combine(double c0, const Mat& r0, double c1, const Mat& r1) {
  Mat r(r0.rows, r0.cols);
  for (std::size_t k = 0; k < r.data.size(); ++k) r.data[k] = c0 * r0.data[k] + c1 * r1.data[k];
  return r;
}

Mat combine(double c0, const Mat& r0, double c1, const Mat& r1, double c2, const Mat& r2) {
  Mat r(r0.rows, r0.cols);
  for (std::size_t k = 0; k < r.data.size(); ++k)
    r.data[k] = c0 * r0.data[k] + c1 * r1.data[k] + c2 * r2.data[k];
  return r;
}

// Patankar stage solve: M x = b with M_ij = -dt p_ij / w_j off the diagonal.
// The diagonal is accumulated from the production column sums using the very
// same scaled products, which keeps every column sum of M at exactly 1 (the
// destruction row sums equal the production column sums by the conservativity
// pairing), so linear invariants survive to round-off. One iterative
// refinement pass cleans up what the LU solve loses at large dt * rate.
Vec patankar_solve(const Mat& rates, const Vec& w, double dt, const Vec& b) {
  const int n = rates.rows;
  Mat m(n, n);
  for (int j = 0; j < n; ++j) {
    double colsum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      const double o = dt * rates(i, j) / w[j];
      m(i, j) = -o;
      colsum += o;
    }
    m(j, j) = 1.0 + colsum;
  }
  LuFactors f;
  try {
    f = lu_factor(m);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("patankar stage matrix singular (malformed production rates)");
  }
  Vec x = lu_solve(f, b);
  Vec resid(n);
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int j = 0; j < n; ++j) s -= m(i, j) * x[j];
    resid[i] = s;
  }
  const Vec dx = lu_solve(f, resid);
  for (int i = 0; i < n; ++i) x[i] += dx[i];
  return x;
}

void check_stage_positive(const Vec& v, const char* who, const char* stage) {
  for (double u : v)
    if (!(u > 0.0) || !std::isfinite(u))
      throw ContractViolationError(std::string(who) + ": stage " + stage +
                                   " lost positivity (value " + std::to_string(u) + ")");
}

// w_j = y_j^(1-s) * y1_j^s on strictly positive inputs
Vec stage_weights(const Vec& y, const Vec& y1, double s) {
  Vec w(y.size());
  for (std::size_t j = 0; j < y.size(); ++j)
    w[j] = std::exp((1.0 - s) * std::log(y[j]) + s * std::log(y1[j]));
  return w;
}

}  // namespace

SSPMPRK2Params sspmprk2_params(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw ParameterError("sspmprk2_params: nonfinite input");
  if (alpha < 0.0 || alpha > 1.0)
    throw ParameterError("sspmprk2_params: 0 <= alpha <= 1 violated (alpha = " +
                         std::to_string(alpha) + ")");
  if (!(beta > 0.0))
    throw ParameterError("sspmprk2_params: beta > 0 violated (beta = " + std::to_string(beta) +
                         ")");
  if (alpha * beta + 1.0 / (2.0 * beta) > 1.0) {
    std::ostringstream os;
    os << "sspmprk2_params: alpha*beta + 1/(2 beta) <= 1 violated (value "
       << alpha * beta + 1.0 / (2.0 * beta) << ")";
    throw ParameterError(os.str());
  }
  SSPMPRK2Params p;
  p.alpha = alpha;
  p.beta = beta;
  p.beta20 = 1.0 - 1.0 / (2.0 * beta) - alpha * beta;
  p.beta21 = 1.0 / (2.0 * beta);
  p.s = (alpha * beta * beta - alpha * beta + 1.0) / (beta * (1.0 - alpha * beta));
  return p;
}

SSPMPRK3Params sspmprk3_params(double eta2, double s) {
  if (!std::isfinite(eta2) || !std::isfinite(s))
    throw ParameterError("sspmprk3_params: nonfinite input");
  if (eta2 < 0.0 || eta2 > kEta2Max) {
    std::ostringstream os;
    os << "sspmprk3_params: eta2 must lie in [0, " << kEta2Max << "], got " << eta2;
    throw ParameterError(os.str());
  }
  SSPMPRK3Params p;
  p.eta2 = eta2;
  p.s = s;
  p.alpha20 = 9.2600312554031827e-1;
  p.alpha21 = 7.3996874459681783e-2;
  p.alpha30 = 7.0439040373427619e-1;
  p.alpha31 = 2.0662904223744017e-10;
  p.alpha32 = 2.9560959605909481e-1;
  p.beta10 = 4.7620819268131703e-1;
  p.beta20 = 7.7545442722396801e-2;
  p.beta21 = 5.9197500149679749e-1;
  p.beta30 = 2.0044747790361456e-1;
  p.beta31 = 6.8214380786704851e-10;
  p.beta32 = 5.9121918658514827e-1;
  p.zeta = 0.62889380778287493358;
  p.eta1 = 0.37110619221712506642 - eta2;
  p.eta3 = -1.2832127371313151768 * eta2 + 0.6146025595987523739;
  p.eta4 = 2.2248760403511226405;
  p.n1 = 0.25690460257320105191;
  p.n2 = 1.0 - p.n1;
  if (std::abs(p.alpha20 + p.alpha21 - 1.0) > 1e-13 ||
      std::abs(p.alpha30 + p.alpha31 + p.alpha32 - 1.0) > 1e-13)
    throw InconsistencyError("sspmprk3_params: stage weight rows do not sum to 1");
  return p;
}

StepRecord sspmprk2_step(const GeneralPDS& pds, const Vec& y, double dt, const SSPMPRK2Params& p) {
  check_state(pds, y, dt, "sspmprk2_step");
  StepRecord rec;
  const Mat r0 = production_matrix(pds, y);

  rec.y1 = patankar_solve(scale(p.beta, r0), y, dt, y);
  check_stage_positive(rec.y1, "sspmprk2_step", "y1");

  const Mat r1 = production_matrix(pds, rec.y1);
  const Vec w = stage_weights(y, rec.y1, p.s);
  Vec rhs(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) rhs[i] = (1.0 - p.alpha) * y[i] + p.alpha * rec.y1[i];
  rec.y_next = patankar_solve(combine(p.beta20, r0, p.beta21, r1), w, dt, rhs);
  check_stage_positive(rec.y_next, "sspmprk2_step", "y_next");
  return rec;
}

StepRecord sspmprk3_step(const GeneralPDS& pds, const Vec& y, double dt, const SSPMPRK3Params& p) {
  check_state(pds, y, dt, "sspmprk3_step");
  const std::size_t n = y.size();
  StepRecord rec;
  const Mat r0 = production_matrix(pds, y);

  rec.y1 = patankar_solve(scale(p.beta10, r0), y, dt, y);
  check_stage_positive(rec.y1, "sspmprk3_step", "y1");
  const Mat r1 = production_matrix(pds, rec.y1);

  rec.rho.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    rec.rho[i] = p.n1 * rec.y1[i] + p.n2 * rec.y1[i] * rec.y1[i] / y[i];
  check_stage_positive(rec.rho, "sspmprk3_step", "rho");

  Vec rhs2(n);
  for (std::size_t i = 0; i < n; ++i) rhs2[i] = p.alpha20 * y[i] + p.alpha21 * rec.y1[i];
  rec.y2 = patankar_solve(combine(p.beta20, r0, p.beta21, r1), rec.rho, dt, rhs2);
  check_stage_positive(rec.y2, "sspmprk3_step", "y2");

  const Vec w = stage_weights(y, rec.y1, p.s);
  Vec rhsa(n);
  for (std::size_t i = 0; i < n; ++i) rhsa[i] = p.eta1 * y[i] + p.eta2 * rec.y1[i];
  rec.a = patankar_solve(combine(p.eta3, r0, p.eta4, r1), w, dt, rhsa);

  rec.sigma.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    rec.sigma[i] = rec.a[i] + p.zeta * y[i] * rec.y2[i] / rec.rho[i];
  for (double v : rec.sigma)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ContractViolationError("sspmprk3_step: sigma component not positive (value " +
                                   std::to_string(v) + ")");

  const Mat r2 = production_matrix(pds, rec.y2);
  Vec rhsf(n);
  for (std::size_t i = 0; i < n; ++i)
    rhsf[i] = p.alpha30 * y[i] + p.alpha31 * rec.y1[i] + p.alpha32 * rec.y2[i];
  rec.y_next =
      patankar_solve(combine(p.beta30, r0, p.beta31, r1, p.beta32, r2), rec.sigma, dt, rhsf);
  check_stage_positive(rec.y_next, "sspmprk3_step", "y_next");
  return rec;
}

StepRecord scheme_step(const GeneralPDS& pds, const Vec& y, double dt, const SchemeParams& p) {
  return std::visit(
      [&](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, SSPMPRK2Params>)
          return sspmprk2_step(pds, y, dt, q);
        else
          return sspmprk3_step(pds, y, dt, q);
      },
      p);
}

std::vector<Vec> integrate(const GeneralPDS& pds, const SchemeParams& p, const Vec& y0, double dt,
                           long n_steps) {
  if (n_steps < 0) throw ParameterError("integrate: n_steps must be nonnegative");
  std::vector<Vec> traj;
  traj.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.push_back(y0);
  for (long k = 0; k < n_steps; ++k) traj.push_back(scheme_step(pds, traj.back(), dt, p).y_next);
  return traj;
}

std::optional<long> steps_to_tolerance(const GeneralPDS& pds, const SchemeParams& p, const Vec& y0,
                                       double dt, const Vec& y_star, double eps, long cap) {
  if (y0.size() != y_star.size())
    throw DimensionError("steps_to_tolerance: y0 and y_star length mismatch");
  Vec y = y0;
  for (long n = 0; n <= cap; ++n) {
    Vec dev(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) dev[i] = y[i] - y_star[i];
    if (two_norm(dev) < eps) return n;
    if (n == cap) break;
    y = scheme_step(pds, y, dt, p).y_next;
  }
  return std::nullopt;
}

}  // namespace sspmprk
