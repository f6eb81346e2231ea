#pragma once

#include <complex>
#include <vector>

namespace sspmprk {

using Vec = std::vector<double>;
using Complex = std::complex<double>;

/// Dense row-major matrix of doubles. The data constructor rejects
/// nonfinite entries; nothing else in the library introduces them.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0);
  Mat(int r, int c, std::vector<double> entries);

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  static Mat identity(int n);
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);
Mat transpose(const Mat& a);
Vec mat_vec(const Mat& a, const Vec& x);

/// Max absolute row sum.
double inf_norm(const Mat& a);
/// Max absolute entry.
double inf_norm(const Vec& x);
double two_norm(const Vec& x);

/// LU decomposition with partial pivoting. Pivots with magnitude at or
/// below 1e-14 * inf_norm(input) are treated as singular.
struct LuFactors {
  Mat lu;
  std::vector<int> perm;
  int sign = 1;
};

LuFactors lu_factor(const Mat& m);
Vec lu_solve(const LuFactors& f, const Vec& b);
Vec lu_solve(const Mat& m, const Vec& b);
/// Columnwise solve M X = B.
Mat lu_solve(const Mat& m, const Mat& b);
double determinant(const Mat& m);

/// All eigenvalues of a small real matrix (n <= 8), computed by Householder
/// reduction to Hessenberg form followed by the shifted double-step QR
/// iteration. Sorted lexicographically by (real, imag); conjugate pairs come
/// out exactly conjugate.
std::vector<Complex> eigenvalues(const Mat& m);
double spectral_radius(const Mat& m);

}  // namespace sspmprk
