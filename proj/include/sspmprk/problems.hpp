#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sspmprk/pds.hpp"

namespace sspmprk {

/// Built-in linear test system with known closed-form solution.
/// `invariants` holds the canonical display basis (integer vectors) used for
/// reporting; it spans the same space as system.invariant_basis.
/// `dominant_eigenvalue` is the eigenvalue used for step-size calibration
/// against stability-region targets.
struct TestProblem {
  std::string id;
  LinearPDS system;
  Vec y0;
  Vec y_star;
  std::vector<Vec> invariants;
  Complex dominant_eigenvalue;
  std::function<Vec(double)> exact;
};

/// Known ids: real3 (real spectrum {0, -300, -500}), complex3 (spectrum
/// {0, -600 +- 100i}), double-kernel4 (two conserved quantities, spectrum
/// {0, 0, -300, -700}).
const std::vector<std::string>& test_problem_ids();
TestProblem test_problem(const std::string& id);

/// Closed-form solution at time t >= 0.
Vec exact_solution(const TestProblem& prob, double t);

}  // namespace sspmprk
