#include "sspmprk/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sspmprk/errors.hpp"

namespace sspmprk {

namespace {

void write_row(std::ostream& os, long step, double t, const Vec& y, const Vec& inv_values) {
  char buf[40];
  os << step;
  std::snprintf(buf, sizeof buf, ",%.17g", t);
  os << buf;
  for (double v : y) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    os << buf;
  }
  for (double v : inv_values) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    os << buf;
  }
  os << '\n';
}

void write_header(std::ostream& os, std::size_t n, std::size_t k) {
  os << "step,t";
  for (std::size_t i = 1; i <= n; ++i) os << ",y" << i;
  for (std::size_t q = 1; q <= k; ++q) os << ",inv" << q;
  os << '\n';
}

Vec invariant_values(const std::vector<Vec>& invariants, const Vec& y) {
  Vec vals(invariants.size());
  for (std::size_t q = 0; q < invariants.size(); ++q) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += invariants[q][i] * y[i];
    vals[q] = s;
  }
  return vals;
}

}  // namespace

double dt_for_target(Complex lambda, Complex z) {
  const double la = std::abs(lambda);
  if (la == 0.0) throw CalibrationError("dt_for_target: lambda must be nonzero");
  const double az = std::abs(z);
  if (az == 0.0) throw CalibrationError("dt_for_target: target z must be nonzero");
  const double c = az / la;
  if (std::abs(z - c * lambda) > 1e-10 * az) {
    std::ostringstream os;
    os << "dt_for_target: z = (" << z.real() << ", " << z.imag()
       << ") does not lie on the positive ray through lambda = (" << lambda.real() << ", "
       << lambda.imag() << ")";
    throw CalibrationError(os.str());
  }
  return c;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.dt.has_value() == cfg.target_z.has_value())
    throw ParameterError("run_experiment: set exactly one of dt and target_z");
  const TestProblem prob = test_problem(cfg.problem_id);
  const double dt =
      cfg.dt ? *cfg.dt : dt_for_target(prob.dominant_eigenvalue, *cfg.target_z);
  if (!(dt > 0.0)) throw ParameterError("run_experiment: dt must be positive");
  if (cfg.cap < 0) throw ParameterError("run_experiment: cap must be nonnegative");

  Vec y = prob.y0;
  if (cfg.perturbation) {
    if (cfg.perturbation->size() != prob.y0.size())
      throw DimensionError("run_experiment: perturbation length mismatch");
    if (cfg.perturb_magnitude < 0.0)
      throw ParameterError("run_experiment: perturbation magnitude must be nonnegative");
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] = prob.y_star[i] + cfg.perturb_magnitude * (*cfg.perturbation)[i];
    for (double v : y)
      if (!(v > 0.0))
        throw DomainError("run_experiment: perturbed start leaves the positive orthant");
  }

  const GeneralPDS pds = pds_from_matrix(prob.system);
  const Vec inv0 = invariant_values(prob.invariants, y);

  std::ofstream out;
  const bool writing = !cfg.out_path.empty();
  if (writing) {
    out.open(cfg.out_path);
    if (!out) throw ParameterError("run_experiment: cannot open output path " + cfg.out_path);
    write_header(out, y.size(), prob.invariants.size());
  }

  Vec dev(y.size());
  const auto deviation = [&](const Vec& state) {
    for (std::size_t i = 0; i < state.size(); ++i) dev[i] = state[i] - prob.y_star[i];
    return two_norm(dev);
  };
  const double dev0 = deviation(y);
  const bool perturbed = cfg.perturbation.has_value();
  if (perturbed && dev0 == 0.0)
    throw ParameterError("run_experiment: perturbation leaves the start at the steady state");

  ExperimentReport rep;
  rep.dt = dt;
  rep.min_component = inf_norm(y) + 1.0;
  const long limit = cfg.n_steps ? *cfg.n_steps : cfg.cap;
  if (cfg.n_steps && *cfg.n_steps < 0)
    throw ParameterError("run_experiment: n_steps must be nonnegative");

  for (long n = 0;; ++n) {
    const Vec vals = invariant_values(prob.invariants, y);
    for (std::size_t q = 0; q < vals.size(); ++q) {
      const double drift = std::abs(vals[q] - inv0[q]) / std::max(1.0, std::abs(inv0[q]));
      rep.max_invariant_drift = std::max(rep.max_invariant_drift, drift);
      if (drift > 1e-8) {
        std::ostringstream os;
        os << "run_experiment: invariant " << q + 1 << " drifted by " << drift << " at step " << n;
        throw ContractViolationError(os.str());
      }
    }
    for (double v : y) {
      rep.min_component = std::min(rep.min_component, v);
      if (!(v > 0.0))
        throw ContractViolationError("run_experiment: nonpositive state component at step " +
                                     std::to_string(n));
    }
    if (writing) write_row(out, n, n * dt, y, vals);

    const double d = deviation(y);
    if (!perturbed && !rep.n_t && d < cfg.eps) rep.n_t = n;
    if (dev0 > 0.0 && d > 10.0 * dev0) rep.diverged = true;

    rep.steps_taken = n;
    if (n == limit) break;
    // perturbed runs probe the growth/contraction dichotomy instead of the
    // distance-to-steady-state stopping rule
    if (!cfg.n_steps && (rep.diverged || (perturbed ? d < 0.1 * dev0 : rep.n_t.has_value())))
      break;
    y = scheme_step(pds, y, dt, cfg.scheme).y_next;
  }
  rep.final_state = y;
  return rep;
}

std::vector<NTableEntry> ntable(const std::vector<std::pair<std::string, SchemeParams>>& schemes,
                                const std::vector<std::string>& problem_ids, double dt, double eps,
                                long cap) {
  std::vector<NTableEntry> table;
  for (const auto& [label, params] : schemes)
    for (const std::string& pid : problem_ids) {
      const TestProblem prob = test_problem(pid);
      const GeneralPDS pds = pds_from_matrix(prob.system);
      table.push_back(
          {label, pid, steps_to_tolerance(pds, params, prob.y0, dt, prob.y_star, eps, cap)});
    }
  return table;
}

OrderStudy order_study(const TestProblem& prob, const SchemeParams& p,
                       const std::vector<double>& dts, double t_final) {
  if (dts.empty()) throw ParameterError("order_study: need at least one dt");
  if (!(t_final > 0.0)) throw ParameterError("order_study: t_final must be positive");
  OrderStudy st;
  st.dts = dts;
  const GeneralPDS pds = pds_from_matrix(prob.system);
  for (double dt : dts) {
    const double ratio = t_final / dt;
    const long n = std::llround(ratio);
    if (n <= 0 || std::abs(n * dt - t_final) > 1e-9 * t_final)
      throw ParameterError("order_study: t_final is not an integer multiple of dt = " +
                           std::to_string(dt));
    Vec y = prob.y0;
    for (long k = 0; k < n; ++k) y = scheme_step(pds, y, dt, p).y_next;
    const Vec ex = exact_solution(prob, t_final);
    Vec diff(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) diff[i] = y[i] - ex[i];
    st.errors.push_back(two_norm(diff));
  }
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    if (dts[i] == dts[i + 1]) throw ParameterError("order_study: repeated dt in ladder");
    st.orders.push_back(std::log(st.errors[i] / st.errors[i + 1]) /
                        std::log(dts[i] / dts[i + 1]));
  }
  return st;
}

void region_export(const StabilityScan& scan, const std::string& csv_path) {
  {
    std::ofstream os(csv_path);
    if (!os) throw ParameterError("region_export: cannot open output path " + csv_path);
    write_scan_csv(scan, os);
  }
  const std::string script_path = csv_path + ".py";
  std::ofstream ps(script_path);
  if (!ps) throw ParameterError("region_export: cannot open output path " + script_path);
  std::string base = csv_path;
  const std::size_t slash = base.find_last_of("/\\");
  if (slash != std::string::npos) base = base.substr(slash + 1);
  char ext[160];
  std::snprintf(ext, sizeof ext, "[%.17g, %.17g, %.17g, %.17g]", scan.re_min, scan.re_max,
                scan.im_min, scan.im_max);
  ps << "#!/usr/bin/env python3\n"
        "# renders the inside-set heatmap exported next to this script\n"
        "import os, sys\n"
        "import numpy as np\n"
        "import matplotlib\n"
        "matplotlib.use(\"Agg\")\n"
        "import matplotlib.pyplot as plt\n"
        "\n"
     << "path = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__) or \".\", \""
     << base << "\")\n"
     << "nx, ny = " << scan.nx << ", " << scan.ny << "\n"
     << "extent = " << ext << "\n"
     << "data = np.genfromtxt(path, delimiter=\",\", skip_header=1)\n"
        "inside = data[:, 3].reshape(ny, nx)\n"
        "mag = np.minimum(data[:, 2].reshape(ny, nx), 2.0)\n"
        "fig, ax = plt.subplots(figsize=(7, 6))\n"
        "ax.imshow(inside, origin=\"lower\", extent=extent, aspect=\"auto\", cmap=\"Blues\",\n"
        "          vmin=0.0, vmax=1.4)\n"
        "ax.contour(np.linspace(extent[0], extent[1], nx), np.linspace(extent[2], extent[3], ny),\n"
        "           mag, levels=[1.0], colors=\"k\", linewidths=0.8)\n"
        "ax.axhline(0.0, color=\"gray\", lw=0.5)\n"
        "ax.axvline(0.0, color=\"gray\", lw=0.5)\n"
        "ax.set_xlabel(\"Re z\")\n"
        "ax.set_ylabel(\"Im z\")\n"
        "ax.set_title(\"|R(z)| <= 1\")\n"
        "fig.savefig(path + \".png\", dpi=150)\n"
        "print(\"wrote\", path + \".png\")\n";
}

void write_trajectory_csv(std::ostream& os, const std::vector<Vec>& traj, double dt,
                          const std::vector<Vec>& invariants) {
  if (traj.empty()) throw ParameterError("write_trajectory_csv: empty trajectory");
  write_header(os, traj.front().size(), invariants.size());
  for (std::size_t n = 0; n < traj.size(); ++n)
    write_row(os, static_cast<long>(n), n * dt, traj[n], invariant_values(invariants, traj[n]));
}

}  // namespace sspmprk
