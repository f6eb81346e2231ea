// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL]
// line; the process exits nonzero when any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sspmprk/errors.hpp"
#include "sspmprk/experiments.hpp"
#include "sspmprk/problems.hpp"
#include "sspmprk/schemes.hpp"
#include "sspmprk/stability.hpp"
#include "sspmprk/verification.hpp"

using namespace sspmprk;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

LinearPDS random_system(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  Mat a(n, n);
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i)
      if (i != j) {
        a(i, j) = u(rng);
        col += a(i, j);
      }
    a(j, j) = -col;
  }
  return make_linear_pds(a);
}

Vec random_state(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec y(n);
  for (double& v : y) v = std::pow(10.0, u(rng));
  return y;
}

SSPMPRK2Params random_mprk2(std::mt19937& rng) {
  std::uniform_real_distribution<double> ub(0.5, 5.0);
  const double beta = ub(rng);
  std::uniform_real_distribution<double> ua(0.0, std::min(1.0, (1.0 - 1.0 / (2.0 * beta)) / beta));
  return sspmprk2_params(ua(rng), beta);
}

double max_match_distance(std::vector<Complex> got, const std::vector<Complex>& want) {
  double worst = 0.0;
  for (Complex w : want) {
    auto nearest = std::min_element(got.begin(), got.end(), [&](Complex a, Complex b) {
      return std::abs(a - w) < std::abs(b - w);
    });
    worst = std::max(worst, std::abs(*nearest - w));
    got.erase(nearest);
  }
  return worst;
}

// 1: one random step never loses positivity and conserves every invariant
Outcome random_step_suite() {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> dim(2, 4);
  const double dts[] = {1e-3, 1.0, 1e3};
  const double eta2s[] = {0.0, 1.0 / 3.0, kEta2Max};
  const double s_for[] = {derive_s(eta2s[0]), derive_s(eta2s[1]), derive_s(eta2s[2])};
  double worst_drift = 0.0, min_component = 1e300;
  for (int c = 0; c < 500; ++c) {
    const int n = dim(rng);
    const LinearPDS sys = random_system(rng, n);
    const GeneralPDS pds = pds_from_matrix(sys);
    const Vec y0 = random_state(rng, n);
    const double dt = dts[c % 3];
    StepRecord rec;
    if (c % 2 == 0)
      rec = sspmprk2_step(pds, y0, dt, random_mprk2(rng));
    else
      rec = sspmprk3_step(pds, y0, dt, sspmprk3_params(eta2s[(c / 2) % 3], s_for[(c / 2) % 3]));
    const Vec* stages[] = {&rec.y_next, &rec.y1, &rec.rho, &rec.y2, &rec.sigma};
    for (const Vec* st : stages)
      for (double v : *st) {
        if (!st->empty() && !(v > 0.0)) return {false, "nonpositive stage component"};
        if (st == stages[0]) min_component = std::min(min_component, v);
      }
    for (const Vec& nv : sys.invariant_basis) {
      double m0 = 0.0, m1 = 0.0;
      for (int i = 0; i < n; ++i) {
        m0 += nv[i] * y0[i];
        m1 += nv[i] * rec.y_next[i];
      }
      const double drift = std::abs(m1 - m0) / std::abs(m0);
      worst_drift = std::max(worst_drift, drift);
      if (drift > 1e-11) return {false, "invariant drift " + num(drift) + " beyond 1e-11"};
    }
  }
  return {true, "500 random steps, worst drift " + num(worst_drift) + ", min component " +
                    num(min_component)};
}

// 2: positive steady states are fixed points of both one-step maps
Outcome fixed_point_suite() {
  const SchemeParams schemes[] = {sspmprk2_params(0.5, 1.0), sspmprk2_params(0.1, 1.0),
                                  sspmprk3_params(1.0 / 3.0, derive_s(1.0 / 3.0))};
  double worst = 0.0;
  for (const std::string& id : test_problem_ids()) {
    const TestProblem prob = test_problem(id);
    const GeneralPDS pds = pds_from_matrix(prob.system);
    for (const SchemeParams& p : schemes)
      for (double dt : {1e-3, 1.0, 5.0}) {
        const Vec next = scheme_step(pds, prob.y_star, dt, p).y_next;
        double err = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
          err = std::max(err, std::abs(next[i] - prob.y_star[i]));
        worst = std::max(worst, err / inf_norm(prob.y_star));
        if (worst > 1e-11)
          return {false, id + " at dt " + num(dt) + ": relative error " + num(worst)};
      }
  }
  return {true, "relative fixed-point error at most " + num(worst)};
}

// 3: steps to reach the steady state fall in the reference windows
Outcome step_count_suite() {
  const auto count = [](const std::string& id, const SchemeParams& p, double dt) {
    const TestProblem prob = test_problem(id);
    const auto n = steps_to_tolerance(pds_from_matrix(prob.system), p, prob.y0, dt, prob.y_star);
    return n ? *n : -1L;
  };
  const SchemeParams third = sspmprk3_params(1.0 / 3.0, derive_s(1.0 / 3.0));
  std::string counts;
  for (const std::string& id : test_problem_ids()) {
    const long n = count(id, third, 5.0);
    counts += (counts.empty() ? "third-order: " : ", ") + std::to_string(n);
    if (n < 18 || n > 25) return {false, id + " third-order count " + std::to_string(n)};
  }
  for (const std::string& id : test_problem_ids()) {
    const long n = count(id, sspmprk2_params(0.1, 1.0), 5.0);
    if (n < 8 || n > 13) return {false, id + " (0.1,1) count " + std::to_string(n)};
  }
  for (const std::string& id : {"complex3", "double-kernel4"}) {
    const long n = count(id, sspmprk2_params(0.5, 1.0), 5.0);
    if (n < 4500 || n > 5500) return {false, std::string(id) + " (0.5,1) count " + std::to_string(n)};
  }
  const SchemeParams tight = sspmprk2_params(0.2, 3.0);
  const std::pair<std::string, Complex> targets[] = {
      {"real3", {-11.5, 0.0}}, {"complex3", {-11.0, 11.0 / 6.0}}, {"double-kernel4", {-11.5, 0.0}}};
  for (const auto& [id, z] : targets) {
    const TestProblem prob = test_problem(id);
    const long n = count(id, tight, dt_for_target(prob.dominant_eigenvalue, z));
    if (n < 250 || n > 350) return {false, id + " (0.2,3) count " + std::to_string(n)};
  }
  return {true, counts + "; all windows met"};
}

// 4: perturbed steady states contract inside the region and blow up outside
Outcome dichotomy_suite() {
  const struct {
    const char* id;
    Complex z;
    bool expect_divergence;
  } cases[] = {
      {"complex3", {-12.0, 2.0}, true},         {"real3", {-12.5, 0.0}, true},
      {"double-kernel4", {-12.5, 0.0}, true},   {"complex3", {-11.0, 11.0 / 6.0}, false},
      {"real3", {-11.5, 0.0}, false},           {"double-kernel4", {-11.5, 0.0}, false},
  };
  std::string detail;
  for (const auto& c : cases) {
    ExperimentConfig cfg;
    cfg.problem_id = c.id;
    cfg.scheme = sspmprk2_params(0.2, 3.0);
    cfg.target_z = c.z;
    cfg.perturbation =
        test_problem(c.id).y0.size() == 4 ? Vec{1.0, -1.0, 1.0, -1.0} : Vec{1.0, -2.0, 1.0};
    const ExperimentReport rep = run_experiment(cfg);
    if (rep.diverged != c.expect_divergence)
      return {false, std::string(c.id) + (c.expect_divergence ? " failed to diverge"
                                                              : " diverged unexpectedly")};
    if (rep.steps_taken >= cfg.cap) return {false, std::string(c.id) + " hit the step cap"};
    if (!detail.empty()) detail += ", ";
    detail += std::to_string(rep.steps_taken);
  }
  return {true, "10x growth/contraction after " + detail + " steps"};
}

// 5: stability functions are normalized at the origin and behave on the axis
Outcome stability_function_suite() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ub(0.5, 5.0);
  for (int c = 0; c < 100; ++c) {
    const double beta = ub(rng);
    std::uniform_real_distribution<double> ua(0.0,
                                              std::min(1.0, (1.0 - 1.0 / (2.0 * beta)) / beta));
    if (r2({0.0, 0.0}, ua(rng), beta) != Complex(1.0, 0.0))
      return {false, "r2(0) is not exactly 1"};
  }
  std::uniform_real_distribution<double> uy(-10.0, 10.0);
  long decided = 0;
  for (int c = 0; c < 10000; ++c) {
    const double beta = ub(rng);
    std::uniform_real_distribution<double> ua(0.0,
                                              std::min(1.0, (1.0 - 1.0 / (2.0 * beta)) / beta));
    const double alpha = ua(rng);
    const double b = uy(rng);
    const double m = imag_axis_margin(b, alpha, beta);
    if (std::abs(m) <= 1e-12) continue;
    ++decided;
    if ((std::abs(r2({0.0, b}, alpha, beta)) > 1.0) != (m > 0.0))
      return {false, "axis sign mismatch at alpha " + num(alpha) + ", beta " + num(beta) +
                         ", b " + num(b)};
  }
  for (double eta2 : {0.0, 1.0 / 3.0, kEta2Max}) {
    const SSPMPRK3Params p = sspmprk3_params(eta2, derive_s(eta2));
    if (std::abs(r3({0.0, 0.0}, p) - 1.0) > 1e-8)
      return {false, "r3(0) deviates from 1 at eta2 " + num(eta2)};
    for (int k = 0; k < 1000; ++k) {
      const double y = std::pow(10.0, -2.0 + 5.0 * k / 999.0);
      if (!(std::abs(r3({0.0, y}, p)) < 1.0))
        return {false, "third-order axis magnitude not below 1 at y " + num(y)};
    }
  }
  return {true, std::to_string(decided) + " decided axis samples all sign-consistent"};
}

// 6: the parameter classifier agrees with brute-force region scans
Outcome classifier_suite() {
  const struct {
    double alpha, beta;
    long inside_default;
  } bounded[] = {{0.2, 3.0, 162098}, {0.24, 3.0, 33234}, {0.2, 3.5, 38230}, {0.24, 3.5, 13196}};
  for (const auto& c : bounded) {
    if (classify_sspmprk2(c.alpha, c.beta) != ParameterRegime::BoundedRegion)
      return {false, "pair not classified as bounded"};
    const StabilityScan far =
        region_scan_r2(c.alpha, c.beta, -1e4, 0.0, -1e3, 1e3, 201, 201);
    long inside = 0;
    for (auto f : far.inside) inside += f;
    if (inside != 1)
      return {false, "far field of (" + num(c.alpha) + "," + num(c.beta) + ") has " +
                         std::to_string(inside) + " inside points, want origin only"};
    const StabilityScan def = region_scan_r2(c.alpha, c.beta, -15.0, 0.5, -8.0, 8.0, 600, 600);
    inside = 0;
    for (auto f : def.inside) inside += f;
    if (std::labs(inside - c.inside_default) > 50)
      return {false, "default-window inside count " + std::to_string(inside) + ", want about " +
                         std::to_string(c.inside_default)};
  }

  if (classify_sspmprk2(0.1, 1.0) != ParameterRegime::UnconditionalStrict)
    return {false, "(0.1,1) not classified as strict"};
  const StabilityScan far = region_scan_r2(0.1, 1.0, -1e4, 0.0, -1e3, 1e3, 201, 201);
  long inside = 0;
  for (auto f : far.inside) inside += f;
  if (inside != 201L * 201L)
    return {false, "(0.1,1) is not stable on the whole sampled left half plane"};

  for (const auto& [alpha, beta] : {std::pair{0.5, 1.0}, std::pair{0.0, 0.5}}) {
    if (classify_sspmprk2(alpha, beta) != ParameterRegime::UnconditionalMarginalAxis)
      return {false, "pair not classified as marginal"};
    for (int k = 0; k < 500; ++k) {
      const double y = std::pow(10.0, -2.0 + 5.0 * k / 499.0);
      if (std::abs(std::abs(r2({0.0, y}, alpha, beta)) - 1.0) > 1e-9)
        return {false, "axis magnitude off 1 for a marginal pair at y " + num(y)};
    }
  }
  return {true, "4 bounded, 1 strict, 2 marginal pairs all confirmed by scans"};
}

// 7: finite differences, closed form and stability function tell one story
Outcome jacobian_suite() {
  const SchemeParams third = sspmprk3_params(1.0 / 3.0, derive_s(1.0 / 3.0));
  const SSPMPRK2Params pairs[] = {sspmprk2_params(0.5, 1.0), sspmprk2_params(0.1, 1.0),
                                  sspmprk2_params(0.2, 3.0)};
  double worst_transfer = 0.0, worst_oracle = 0.0, worst_kernel = 0.0;
  for (const std::string& id : test_problem_ids()) {
    const TestProblem prob = test_problem(id);
    const GeneralPDS pds = pds_from_matrix(prob.system);
    const auto kernel = linear_invariants(transpose(prob.system.A));
    const auto eigs_a = eigenvalues(prob.system.A);
    for (double dt : {1e-3, 1e-2, 5.0}) {
      const auto fd_of = [&](const SchemeParams& p) {
        return fd_jacobian(
            [&](const Vec& y) { return scheme_step(pds, y, dt, p).y_next; }, prob.y_star,
            fd_step(prob.y_star));
      };
      for (const SSPMPRK2Params& p : pairs) {
        const Mat jf = fd_of(p);
        const Mat ja = analytic_jacobian_sspmprk2(prob.system, dt, p);
        worst_oracle = std::max(worst_oracle, inf_norm(ja - jf) / (1.0 + inf_norm(ja)));
        std::vector<Complex> want;
        for (Complex lam : eigs_a) want.push_back(r2(dt * lam, p.alpha, p.beta));
        worst_transfer = std::max(worst_transfer, max_match_distance(eigenvalues(jf), want));
        for (double res : jacobian_report(jf, kernel).kernel_residuals)
          worst_kernel = std::max(worst_kernel, res);
      }
      const Mat jf = fd_of(third);
      std::vector<Complex> want;
      for (Complex lam : eigs_a)
        want.push_back(r3(dt * lam, std::get<SSPMPRK3Params>(third)));
      worst_transfer = std::max(worst_transfer, max_match_distance(eigenvalues(jf), want));
      for (double res : jacobian_report(jf, kernel).kernel_residuals)
        worst_kernel = std::max(worst_kernel, res);
    }
  }
  if (worst_oracle > 1e-5) return {false, "closed form vs FD mismatch " + num(worst_oracle)};
  if (worst_transfer > 1e-5) return {false, "eigenvalue transfer mismatch " + num(worst_transfer)};
  if (worst_kernel > 1e-6) return {false, "kernel residual " + num(worst_kernel)};
  return {true, "worst: oracle " + num(worst_oracle) + ", transfer " + num(worst_transfer) +
                    ", kernel " + num(worst_kernel)};
}

// 8: the recovered a-stage exponent is consistent across matching points
Outcome exponent_suite() {
  const double frozen[] = {5.613506549648761, 5.72893419830431, 5.744649985622576};
  const double eta2s[] = {0.0, 1.0 / 3.0, kEta2Max};
  std::string detail;
  for (int k = 0; k < 3; ++k) {
    const double s = derive_s(eta2s[k]);
    if (std::abs(s - frozen[k]) > 1e-9 * frozen[k])
      return {false, "s at eta2 " + num(eta2s[k]) + " came out as " + num(s)};
    const double s_alt = derive_s(eta2s[k], {-3.0, 0.5});
    if (std::abs(s - s_alt) > 1e-9 * s)
      return {false, "s depends on the matching point at eta2 " + num(eta2s[k])};
    const SSPMPRK3Params p = sspmprk3_params(eta2s[k], s);
    for (Complex z : {Complex(-0.7, 0.0), Complex(-15.0, 3.0), Complex(0.0, 2.0)}) {
      const Complex nested = r3(z, p);
      if (std::abs(nested - r3_ratio(z, eta2s[k])) > 1e-9 * (1.0 + std::abs(nested)))
        return {false, "nested/coefficient split at eta2 " + num(eta2s[k])};
    }
    if (!detail.empty()) detail += ", ";
    detail += num(s);
  }
  return {true, "s = " + detail};
}

// 9: observed convergence orders reach the design orders
Outcome order_suite() {
  const std::vector<double> dts{1e-4, 5e-5, 2.5e-5, 1.25e-5};
  const double tf = 5e-3;
  std::string detail;
  for (const std::string& id : {"real3", "complex3"}) {
    const OrderStudy st = order_study(test_problem(id), sspmprk2_params(0.5, 1.0), dts, tf);
    for (double o : st.orders)
      if (o < 1.8) return {false, id + " second-order study saw order " + num(o)};
    detail += id + " " + num(st.orders.back()) + ", ";
  }
  const OrderStudy st =
      order_study(test_problem("real3"), sspmprk3_params(1.0 / 3.0, derive_s(1.0 / 3.0)), dts, tf);
  for (double o : st.orders)
    if (o < 2.7) return {false, "third-order study saw order " + num(o)};
  return {true, detail + "third-order real3 " + num(st.orders.back())};
}

}  // namespace

int main() {
  const struct {
    const char* title;
    std::function<Outcome()> run;
  } criteria[] = {
      {"random one-step positivity and conservation", random_step_suite},
      {"steady states are fixed points", fixed_point_suite},
      {"steps-to-tolerance windows", step_count_suite},
      {"perturbed growth/contraction dichotomy", dichotomy_suite},
      {"stability function normalization and axis behavior", stability_function_suite},
      {"parameter classifier versus region scans", classifier_suite},
      {"Jacobian oracle agreement", jacobian_suite},
      {"a-stage exponent recovery", exponent_suite},
      {"observed convergence orders", order_suite},
  };
  bool all = true;
  int k = 1;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("unexpected error: ") + e.what()};
    }
    std::cout << (out.ok ? "[PASS]" : "[FAIL]") << " criterion " << k << ": " << c.title << " ("
              << out.detail << ")\n";
    all = all && out.ok;
    ++k;
  }
  return all ? 0 : 1;
}
