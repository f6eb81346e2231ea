#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sspmprk/errors.hpp"
#include "sspmprk/experiments.hpp"
#include "sspmprk/problems.hpp"
#include "sspmprk/schemes.hpp"
#include "sspmprk/stability.hpp"
#include "sspmprk/verification.hpp"

namespace {

using namespace sspmprk;

std::vector<double> parse_numbers(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream is(cleaned);
  std::vector<double> vals;
  double v;
  while (is >> v) vals.push_back(v);
  if (!is.eof()) throw ParameterError("could not parse number list: " + text);
  return vals;
}

Mat parse_matrix(const std::string& text) {
  const std::vector<double> vals = parse_numbers(text);
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(vals.size()))));
  if (n < 1 || static_cast<std::size_t>(n) * n != vals.size())
    throw DimensionError("matrix text must hold a square number of entries, got " +
                         std::to_string(vals.size()));
  return Mat(n, n, vals);
}

Complex parse_target_z(const std::string& text) {
  // named figure targets or "re[,im]"
  if (text == "z1") return {-12.0, 2.0};
  if (text == "z2") return {-11.0, 11.0 / 6.0};
  if (text == "z3") return {-12.5, 0.0};
  if (text == "z4") return {-11.5, 0.0};
  const std::vector<double> vals = parse_numbers(text);
  if (vals.size() == 1) return {vals[0], 0.0};
  if (vals.size() == 2) return {vals[0], vals[1]};
  throw ParameterError("target z must be z1..z4 or re[,im], got: " + text);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(Complex z) {
  std::string s = fmt(z.real());
  if (z.imag() != 0.0) s += (z.imag() > 0 ? "+" : "") + fmt(z.imag()) + "i";
  return s;
}

std::string fmt(const Vec& y) {
  std::string s = "(";
  for (std::size_t i = 0; i < y.size(); ++i) s += (i ? ", " : "") + fmt(y[i]);
  return s + ")";
}

// flags shared by every subcommand that runs a scheme
struct SchemeFlags {
  std::string scheme = "sspmprk2";
  double alpha = 0.5;
  double beta = 1.0;
  double eta2 = 1.0 / 3.0;
  double s = 0.0;
  bool s_given = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scheme", scheme, "integrator: sspmprk2 or sspmprk3")
        ->check(CLI::IsMember({"sspmprk2", "sspmprk3"}));
    cmd->add_option("--alpha", alpha, "sspmprk2 parameter alpha (default 0.5)");
    cmd->add_option("--beta", beta, "sspmprk2 parameter beta (default 1)");
    cmd->add_option("--eta2", eta2, "sspmprk3 free parameter eta2 (default 1/3)");
    cmd->add_option("--s", s, "sspmprk3 a-stage exponent (default: derived)")
        ->each([this](const std::string&) { s_given = true; });
  }

  SchemeParams build() const {
    if (scheme == "sspmprk2") return sspmprk2_params(alpha, beta);
    const double sv = s_given ? s : derive_s(eta2);
    if (!s_given)
      std::cerr << "sspmprk3: eta2 = " << fmt(eta2) << ", derived a-stage exponent s = " << fmt(sv)
                << "\n";
    return sspmprk3_params(eta2, sv);
  }

  std::string label() const {
    std::ostringstream os;
    if (scheme == "sspmprk2")
      os << "sspmprk2(" << alpha << "," << beta << ")";
    else
      os << "sspmprk3(" << eta2 << ")";
    return os.str();
  }
};

Vec default_perturbation(int dim) {
  if (dim == 3) return {1.0, -2.0, 1.0};
  if (dim == 4) return {1.0, -1.0, 1.0, -1.0};
  Vec v(dim, 1.0);
  for (int i = 1; i < dim; i += 2) v[i] = -1.0;
  return v;
}

void print_report(const ExperimentReport& rep) {
  std::cout << "dt = " << fmt(rep.dt) << "\n"
            << "steps taken = " << rep.steps_taken << "\n";
  if (rep.n_t)
    std::cout << "steps to tolerance = " << *rep.n_t << "\n";
  else
    std::cout << "steps to tolerance = not reached\n";
  std::cout << "diverged (10x deviation growth) = " << (rep.diverged ? "yes" : "no") << "\n"
            << "final state = " << fmt(rep.final_state) << "\n"
            << "max invariant drift = " << fmt(rep.max_invariant_drift) << "\n"
            << "min component seen = " << fmt(rep.min_component) << "\n";
}

int run_integrate(const SchemeFlags& sf, const std::string& problem, const std::string& matrix,
                  const std::string& y0_text, double dt, bool dt_given, const std::string& target,
                  long steps, bool steps_given, double eps, long cap, const std::string& out) {
  const SchemeParams params = sf.build();
  if (!matrix.empty()) {
    // ad-hoc linear system given on the command line
    if (!dt_given) throw ParameterError("custom-matrix integration needs --dt");
    const LinearPDS sys = make_linear_pds(parse_matrix(matrix));
    Vec y0 = parse_numbers(y0_text);
    if (static_cast<int>(y0.size()) != sys.dim)
      throw DimensionError("--y0 length does not match the matrix dimension");
    const long n = steps_given ? steps : 100;
    const std::vector<Vec> traj = integrate(pds_from_matrix(sys), params, y0, dt, n);
    if (!out.empty()) {
      std::ofstream os(out);
      if (!os) throw ParameterError("cannot open output path " + out);
      write_trajectory_csv(os, traj, dt, sys.invariant_basis);
    }
    std::cout << "final state = " << fmt(traj.back()) << "\n";
    for (std::size_t q = 0; q < sys.invariant_basis.size(); ++q) {
      double v0 = 0.0, v1 = 0.0;
      for (std::size_t i = 0; i < y0.size(); ++i) {
        v0 += sys.invariant_basis[q][i] * y0[i];
        v1 += sys.invariant_basis[q][i] * traj.back()[i];
      }
      std::cout << "invariant " << q + 1 << ": start " << fmt(v0) << ", end " << fmt(v1) << "\n";
    }
    return 0;
  }
  ExperimentConfig cfg;
  cfg.problem_id = problem;
  cfg.scheme = params;
  if (dt_given) cfg.dt = dt;
  if (!target.empty()) cfg.target_z = parse_target_z(target);
  if (steps_given) cfg.n_steps = steps;
  cfg.eps = eps;
  cfg.cap = cap;
  cfg.out_path = out;
  print_report(run_experiment(cfg));
  return 0;
}

int run_ntable(const SchemeFlags& sf, bool scheme_given, const std::string& problems_text,
               double dt, double eps, long cap) {
  std::vector<std::pair<std::string, SchemeParams>> schemes;
  if (scheme_given) {
    schemes.emplace_back(sf.label(), sf.build());
  } else {
    // the four reference configurations of the source experiments
    const double s13 = derive_s(1.0 / 3.0);
    std::cerr << "sspmprk3: eta2 = " << fmt(1.0 / 3.0) << ", derived a-stage exponent s = "
              << fmt(s13) << "\n";
    schemes.emplace_back("sspmprk3(1/3)", sspmprk3_params(1.0 / 3.0, s13));
    schemes.emplace_back("sspmprk2(0.1,1)", sspmprk2_params(0.1, 1.0));
    schemes.emplace_back("sspmprk2(0.5,1)", sspmprk2_params(0.5, 1.0));
    schemes.emplace_back("sspmprk2(0.2,3)", sspmprk2_params(0.2, 3.0));
  }
  std::vector<std::string> pids;
  if (problems_text == "all")
    pids = test_problem_ids();
  else {
    std::istringstream is(problems_text);
    std::string tok;
    while (std::getline(is, tok, ',')) pids.push_back(tok);
  }
  const auto table = ntable(schemes, pids, dt, eps, cap);
  std::cout << "steps to reach ||y - y*|| < " << eps << " at dt = " << dt << "\n";
  for (const auto& e : table) {
    std::cout << "  " << e.scheme_label << " on " << e.problem_id << ": ";
    if (e.n_t)
      std::cout << *e.n_t << "\n";
    else
      std::cout << "> " << cap << " (cap)\n";
  }
  return 0;
}

int run_region(const SchemeFlags& sf, const std::string& rect_text, int nx, int ny,
               const std::string& out) {
  const std::vector<double> r = parse_numbers(rect_text);
  if (r.size() != 4) throw ParameterError("--rect needs re_min,re_max,im_min,im_max");
  StabilityScan scan;
  if (sf.scheme == "sspmprk2") {
    scan = region_scan_r2(sf.alpha, sf.beta, r[0], r[1], r[2], r[3], nx, ny);
  } else {
    const SchemeParams p = sf.build();
    scan = region_scan_r3(std::get<SSPMPRK3Params>(p), r[0], r[1], r[2], r[3], nx, ny);
  }
  region_export(scan, out);
  long inside = 0;
  for (auto f : scan.inside) inside += f;
  std::cout << "wrote " << out << " and " << out << ".py (" << inside << " of "
            << scan.inside.size() << " grid points inside)\n";
  return 0;
}

int run_classify(double alpha, double beta) {
  const ParameterRegime regime = classify_sspmprk2(alpha, beta);
  std::cout << "sspmprk2(" << alpha << ", " << beta << "): " << to_string(regime) << "\n";
  try {
    std::cout << "limit of R(z) for z -> -inf: " << fmt(r2_limit(alpha, beta)) << "\n";
  } catch (const UndefinedLimitError&) {
    std::cout << "limit of R(z) for z -> -inf: undefined (alpha*beta = 1)\n";
  }
  for (double b : {0.5, 1.0, 2.0})
    std::cout << "imaginary-axis margin at b = " << b << ": " << fmt(imag_axis_margin(b, alpha, beta))
              << "\n";
  return 0;
}

int run_jacobian_check(const SchemeFlags& sf, const std::string& problem, double dt, bool dt_given,
                       const std::string& target) {
  const SchemeParams params = sf.build();
  const TestProblem prob = test_problem(problem);
  if (dt_given == !target.empty())
    throw ParameterError("jacobian-check needs exactly one of --dt and --target-z");
  const double dtv =
      dt_given ? dt : dt_for_target(prob.dominant_eigenvalue, parse_target_z(target));
  const GeneralPDS pds = pds_from_matrix(prob.system);
  const auto step = [&](const Vec& y) { return scheme_step(pds, y, dtv, params).y_next; };
  const Mat j = fd_jacobian(step, prob.y_star, fd_step(prob.y_star));
  const std::vector<Vec> kernel = linear_invariants(transpose(prob.system.A));
  const JacobianReport rep = jacobian_report(j, kernel);

  bool ok = true;
  std::cout << "dt = " << fmt(dtv) << "\n";
  // eigenvalue transfer: J spectrum vs R(dt * lambda) over the spectrum of A
  std::vector<Complex> expected;
  for (Complex lam : eigenvalues(prob.system.A)) {
    const Complex z = dtv * lam;
    expected.push_back(sf.scheme == "sspmprk2"
                           ? r2(z, sf.alpha, sf.beta)
                           : r3(z, std::get<SSPMPRK3Params>(params)));
  }
  std::vector<Complex> got = rep.eigenvalues;
  double worst = 0.0;
  for (Complex want : expected) {
    auto nearest = std::min_element(got.begin(), got.end(), [&](Complex a, Complex b) {
      return std::abs(a - want) < std::abs(b - want);
    });
    worst = std::max(worst, std::abs(*nearest - want));
    got.erase(nearest);
  }
  std::cout << "eigenvalue transfer max mismatch = " << fmt(worst)
            << (worst <= 1e-5 ? "  [ok]" : "  [FAIL > 1e-5]") << "\n";
  ok = ok && worst <= 1e-5;

  if (sf.scheme == "sspmprk2") {
    const Mat ja = analytic_jacobian_sspmprk2(prob.system, dtv, std::get<SSPMPRK2Params>(params));
    const double diff = inf_norm(ja - j);
    const double bound = 1e-5 * (1.0 + inf_norm(j));
    std::cout << "analytic vs finite-difference Jacobian: " << fmt(diff)
              << (diff <= bound ? "  [ok]" : "  [FAIL]") << "\n";
    ok = ok && diff <= bound;
  }
  for (std::size_t q = 0; q < rep.kernel_residuals.size(); ++q) {
    const double rres = rep.kernel_residuals[q];
    std::cout << "kernel direction " << q + 1 << " residual = " << fmt(rres)
              << (rres <= 1e-6 ? "  [ok]" : "  [FAIL > 1e-6]") << "\n";
    ok = ok && rres <= 1e-6;
  }
  std::cout << "spectral radius = " << fmt(rep.spectral_radius) << "\n"
            << "verdict: " << to_string(stability_verdict(j, kernel)) << "\n";
  return ok ? 0 : 1;
}

int run_order(const SchemeFlags& sf, const std::string& problem, const std::string& dts_text,
              double t_final) {
  const SchemeParams params = sf.build();
  const TestProblem prob = test_problem(problem);
  const std::vector<double> dts = parse_numbers(dts_text);
  const OrderStudy st = order_study(prob, params, dts, t_final);
  std::cout << "errors at t = " << fmt(t_final) << " on " << problem << " with " << sf.label()
            << "\n";
  for (std::size_t i = 0; i < st.dts.size(); ++i) {
    std::cout << "  dt = " << fmt(st.dts[i]) << "  error = " << fmt(st.errors[i]);
    if (i > 0) std::cout << "  observed order = " << fmt(st.orders[i - 1]);
    std::cout << "\n";
  }
  return 0;
}

int run_demo_divergence(const SchemeFlags& sf, const std::string& problem,
                        const std::string& target, double magnitude, long cap,
                        const std::string& out) {
  ExperimentConfig cfg;
  cfg.problem_id = problem;
  cfg.scheme = sf.build();
  cfg.target_z = parse_target_z(target);
  cfg.perturbation = default_perturbation(static_cast<int>(test_problem(problem).y0.size()));
  cfg.perturb_magnitude = magnitude;
  cfg.cap = cap;
  cfg.out_path = out;
  const ExperimentReport rep = run_experiment(cfg);
  std::cout << "calibrated so dt * lambda = " << fmt(*cfg.target_z) << "\n"
            << "perturbed start y* + " << fmt(magnitude) << " * v, v = "
            << fmt(*cfg.perturbation) << "\n";
  print_report(rep);
  if (rep.diverged)
    std::cout << "deviation grew 10x after " << rep.steps_taken << " steps\n";
  else
    std::cout << "no divergence: deviation contracted to a tenth after " << rep.steps_taken
              << " steps\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positivity- and invariants-preserving integrators for linear"
               " production-destruction systems, with stability-analysis tools"};
  app.require_subcommand(1);

  SchemeFlags sf;
  std::string problem = "real3";
  std::string matrix, y0_text, target, out, rect = "-15,0.5,-8,8";
  std::string problems_text = "all", dts_text;
  double dt = 0.0, eps = 2e-2, t_final = 1e-2, magnitude = 1e-5;
  long steps = 0, cap = 1000000;
  int nx = 600, ny = 600;
  bool scheme_given = false;

  auto* c_int = app.add_subcommand("integrate", "run one integration and report the outcome");
  sf.attach(c_int);
  c_int->add_option("--problem", problem, "built-in problem id (real3, complex3, double-kernel4)");
  c_int->add_option("--matrix", matrix, "ad-hoc square system matrix, row-major numbers");
  c_int->add_option("--y0", y0_text, "initial state for --matrix runs");
  auto* o_dt = c_int->add_option("--dt", dt, "step size");
  auto* o_tz = c_int->add_option("--target-z", target, "calibrate dt so dt*lambda = z (z1..z4 or re[,im])");
  o_dt->excludes(o_tz);
  c_int->add_option("--steps", steps, "fixed step count (otherwise run to tolerance)");
  c_int->add_option("--tol", eps, "target distance to the steady state (default 2e-2)");
  c_int->add_option("--cap", cap, "step cap for tolerance mode (default 1e6)");
  c_int->add_option("--out", out, "trajectory CSV path");

  auto* c_nt = app.add_subcommand("ntable", "steps-to-tolerance table over schemes x problems");
  sf.attach(c_nt);
  c_nt->add_option("--problems", problems_text, "comma list of problem ids or 'all'");
  c_nt->add_option("--dt", dt, "step size (default 5)")->default_val(5.0);
  c_nt->add_option("--tol", eps, "tolerance (default 2e-2)");
  c_nt->add_option("--cap", cap, "step cap (default 1e6)");

  auto* c_rg = app.add_subcommand("region", "export a stability-region scan as CSV + plot script");
  sf.attach(c_rg);
  c_rg->add_option("--rect", rect, "re_min,re_max,im_min,im_max (default -15,0.5,-8,8)");
  c_rg->add_option("--nx", nx, "grid columns (default 600)");
  c_rg->add_option("--ny", ny, "grid rows (default 600)");
  c_rg->add_option("--out", out, "CSV output path")->required();

  auto* c_cl = app.add_subcommand("classify", "stability regime of an sspmprk2 parameter pair");
  c_cl->add_option("--alpha", sf.alpha, "alpha")->required();
  c_cl->add_option("--beta", sf.beta, "beta")->required();

  auto* c_jc = app.add_subcommand("jacobian-check",
                                  "cross-check the one-step Jacobian against the stability function");
  sf.attach(c_jc);
  c_jc->add_option("--problem", problem, "built-in problem id");
  auto* o_dt2 = c_jc->add_option("--dt", dt, "step size");
  auto* o_tz2 = c_jc->add_option("--target-z", target, "calibrated step size target");
  o_dt2->excludes(o_tz2);

  auto* c_or = app.add_subcommand("order", "convergence order study against the exact solution");
  sf.attach(c_or);
  c_or->add_option("--problem", problem, "built-in problem id");
  c_or->add_option("--dts", dts_text, "comma list of step sizes")->required();
  c_or->add_option("--t-final", t_final, "final time (default 1e-2)");

  auto* c_dv = app.add_subcommand("demo-divergence",
                                  "perturbed steady-state run at a calibrated step size");
  sf.attach(c_dv);
  c_dv->add_option("--problem", problem, "built-in problem id");
  c_dv->add_option("--target-z", target, "calibration target (z1..z4 or re[,im])")->required();
  c_dv->add_option("--perturb", magnitude, "perturbation magnitude (default 1e-5)");
  c_dv->add_option("--cap", cap, "step cap (default 1e6)");
  c_dv->add_option("--out", out, "trajectory CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_int))
      return run_integrate(sf, problem, matrix, y0_text, dt, o_dt->count() > 0, target, steps,
                           c_int->count("--steps") > 0, eps, cap, out);
    if (app.got_subcommand(c_nt)) {
      scheme_given = c_nt->count("--scheme") > 0;
      return run_ntable(sf, scheme_given, problems_text, dt, eps, cap);
    }
    if (app.got_subcommand(c_rg)) return run_region(sf, rect, nx, ny, out);
    if (app.got_subcommand(c_cl)) return run_classify(sf.alpha, sf.beta);
    if (app.got_subcommand(c_jc))
      return run_jacobian_check(sf, problem, dt, o_dt2->count() > 0, target);
    if (app.got_subcommand(c_or)) return run_order(sf, problem, dts_text, t_final);
    if (app.got_subcommand(c_dv)) return run_demo_divergence(sf, problem, target, magnitude, cap, out);
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CalibrationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
