#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sspmprk/problems.hpp"
#include "sspmprk/schemes.hpp"
#include "sspmprk/stability.hpp"

namespace sspmprk {

/// Step size dt with dt * lambda = z, for z on the ray through lambda:
/// returns |z| / |lambda| after checking collinearity to 1e-10 relative.
double dt_for_target(Complex lambda, Complex z);

/// One integration run on a built-in problem. Exactly one of dt / target_z
/// must be set; target_z calibrates dt against the problem's dominant
/// eigenvalue. A set n_steps runs that many steps; otherwise the run stops
/// at the first state within eps of y_star (Euclidean), at 10x deviation
/// growth, or at cap steps. With a perturbation the run starts from
/// y_star + perturb_magnitude * perturbation instead of y0 and probes the
/// growth/contraction dichotomy: it stops once the deviation from y_star
/// grows past 10x its initial value (diverged) or falls below a tenth of it,
/// and n_t stays unset.
struct ExperimentConfig {
  std::string problem_id;
  SchemeParams scheme;
  std::optional<double> dt;
  std::optional<Complex> target_z;
  std::optional<long> n_steps;
  double eps = 2e-2;
  long cap = 1000000;
  std::optional<Vec> perturbation;
  double perturb_magnitude = 1e-5;
  std::string out_path;  // trajectory CSV when nonempty
};

struct ExperimentReport {
  double dt = 0.0;
  std::optional<long> n_t;  // first step index within eps of y_star
  bool diverged = false;    // deviation exceeded 10x its initial value
  long steps_taken = 0;
  Vec final_state;
  double max_invariant_drift = 0.0;  // relative to the starting invariant values
  double min_component = 0.0;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// steps_to_tolerance for each (scheme, problem) pair at a common dt.
struct NTableEntry {
  std::string scheme_label;
  std::string problem_id;
  std::optional<long> n_t;
};

std::vector<NTableEntry> ntable(const std::vector<std::pair<std::string, SchemeParams>>& schemes,
                                const std::vector<std::string>& problem_ids, double dt,
                                double eps = 2e-2, long cap = 1000000);

/// Errors against the closed-form solution at t_final over a dt ladder, with
/// observed orders log(e_i/e_{i+1}) / log(dt_i/dt_{i+1}) between neighbours.
/// Each t_final/dt must be an integer (to 1e-9 relative).
struct OrderStudy {
  std::vector<double> dts;
  std::vector<double> errors;
  std::vector<double> orders;
};

OrderStudy order_study(const TestProblem& prob, const SchemeParams& p,
                       const std::vector<double>& dts, double t_final);

/// Writes the scan as CSV at csv_path plus a self-contained matplotlib
/// script at csv_path + ".py" rendering the inside-set heatmap.
void region_export(const StabilityScan& scan, const std::string& csv_path);

/// Trajectory CSV: header step,t,y1..yN,inv1..invK, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const std::vector<Vec>& traj, double dt,
                          const std::vector<Vec>& invariants);

}  // namespace sspmprk
