#include "sspmprk/pds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sspmprk/errors.hpp"

namespace sspmprk {

PDSValidation validate_linear_pds(const Mat& a, double tol) {
  if (a.rows != a.cols) throw DimensionError("validate_linear_pds: matrix is not square");
  PDSValidation rep;
  const int n = a.rows;
  const double col_tol = tol * std::max(1.0, inf_norm(a));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a(i, j) < -tol) {
        std::ostringstream os;
        os << "negative off-diagonal entry (" << i + 1 << "," << j + 1 << ") = " << a(i, j);
        rep.violations.push_back(os.str());
      }
    }
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a(i, j);
    if (std::abs(s) > col_tol) {
      std::ostringstream os;
      os << "column " << j + 1 << " sums to " << s << " (tolerance " << col_tol << ")";
      rep.violations.push_back(os.str());
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

LinearPDS make_linear_pds(const Mat& a, double tol) {
  PDSValidation rep = validate_linear_pds(a, tol);
  if (!rep.ok) {
    std::string msg = "make_linear_pds: matrix is not a conservative positive system:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw ParameterError(msg);
  }
  LinearPDS sys;
  sys.A = a;
  sys.dim = a.rows;
  sys.invariant_basis = linear_invariants(a, tol);
  return sys;
}

GeneralPDS pds_from_matrix(const LinearPDS& sys) {
  GeneralPDS pds;
  pds.dim = sys.dim;
  const Mat a = sys.A;
  pds.p = [a](int i, int j, const Vec& y) { return i == j ? 0.0 : a(i, j) * y[j]; };
  pds.d = [a](int i, int j, const Vec& y) { return i == j ? 0.0 : a(j, i) * y[i]; };
  return pds;
}

std::vector<Vec> linear_invariants(const Mat& a, double tol) {
  if (a.rows != a.cols) throw DimensionError("linear_invariants: matrix is not square");
  const int n = a.rows;
  const double thr = tol * std::max(1.0, inf_norm(a));
  Mat b = transpose(a);
  // reduced row echelon form of A^T with partial pivoting
  std::vector<int> pivot_row_of_col(n, -1);
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int p = r;
    for (int i = r + 1; i < n; ++i)
      if (std::abs(b(i, c)) > std::abs(b(p, c))) p = i;
    if (std::abs(b(p, c)) <= thr) continue;
    if (p != r)
      for (int j = 0; j < n; ++j) std::swap(b(r, j), b(p, j));
    const double piv = b(r, c);
    for (int j = 0; j < n; ++j) b(r, j) /= piv;
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      const double f = b(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) b(i, j) -= f * b(r, j);
    }
    pivot_row_of_col[c] = r;
    ++r;
  }
  std::vector<Vec> basis;
  for (int f = 0; f < n; ++f) {
    if (pivot_row_of_col[f] >= 0) continue;
    Vec v(n, 0.0);
    v[f] = 1.0;
    for (int c = 0; c < n; ++c)
      if (pivot_row_of_col[c] >= 0) v[c] = -b(pivot_row_of_col[c], f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Vec steady_state(const LinearPDS& sys, const Vec& y0) {
  const int n = sys.dim;
  if (static_cast<int>(y0.size()) != n) throw DimensionError("steady_state: y0 length mismatch");
  const int k = static_cast<int>(sys.invariant_basis.size());
  // scale A so its rows are commensurate with the invariant rows; the
  // stacked least-squares solution is then invariant under A -> cA
  const double scale = std::max(inf_norm(sys.A), 1e-300);
  Mat m(n + k, n);
  Vec rhs(n + k, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = sys.A(i, j) / scale;
  for (int q = 0; q < k; ++q) {
    const Vec& nv = sys.invariant_basis[q];
    double dot = 0.0;
    for (int j = 0; j < n; ++j) {
      m(n + q, j) = nv[j];
      dot += nv[j] * y0[j];
    }
    rhs[n + q] = dot;
  }
  const Mat mt = transpose(m);
  const Mat gram = mt * m;
  const Vec g = mat_vec(mt, rhs);
  try {
    return lu_solve(gram, g);
  } catch (const SingularMatrixError&) {
    throw UnderdeterminedError(
        "steady_state: stacked system is rank deficient; steady state not determined by the "
        "invariants of y0");
  }
}

}  // namespace sspmprk
