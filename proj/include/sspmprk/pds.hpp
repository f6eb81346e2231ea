#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sspmprk/linalg.hpp"

namespace sspmprk {

/// Production/destruction table of an N-component system.
/// p(i, j, y) is the rate at which component i gains mass from component j,
/// d(i, j, y) the rate at which it loses mass to component j. Conservative
/// systems satisfy p(i, j, y) == d(j, i, y) and zero diagonals.
struct GeneralPDS {
  int dim = 0;
  std::function<double(int, int, const Vec&)> p;
  std::function<double(int, int, const Vec&)> d;
};

/// Linear system y' = A y with A Metzler and column sums zero, plus the
/// cached basis of conserved linear functionals (ker of A transposed).
struct LinearPDS {
  Mat A;
  int dim = 0;
  std::vector<Vec> invariant_basis;
};

struct PDSValidation {
  bool ok = false;
  std::vector<std::string> violations;
};

constexpr double kPdsTol = 1e-10;

/// Checks Metzler sign structure (off-diagonals >= -tol) and conservativity
/// (column sums within tol * max(1, inf_norm(A)) of zero).
PDSValidation validate_linear_pds(const Mat& a, double tol = kPdsTol);

/// Validating factory; throws ParameterError listing all violations.
LinearPDS make_linear_pds(const Mat& a, double tol = kPdsTol);

/// Rate table of the linear system: p(i,j,y) = a_ij y_j and d(i,j,y) = a_ji y_i
/// for i != j, zero diagonals.
GeneralPDS pds_from_matrix(const LinearPDS& sys);

/// Basis of ker(A^T), i.e. all n with n^T A = 0, by Gaussian elimination
/// with relative pivot threshold tol. Empty when A^T is nonsingular.
std::vector<Vec> linear_invariants(const Mat& a, double tol = kPdsTol);

/// The steady state selected by the invariants of y0: least-squares solution
/// of the stacked system [A; N] y = [0; N y0] where N holds the invariant
/// rows. Throws UnderdeterminedError when the stacked system is rank
/// deficient (nonzero purely imaginary spectrum or too few invariants).
Vec steady_state(const LinearPDS& sys, const Vec& y0);

}  // namespace sspmprk
