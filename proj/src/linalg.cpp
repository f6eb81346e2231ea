#include "sspmprk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "sspmprk/errors.hpp"

namespace sspmprk {

namespace {

void require_square(const Mat& m, const char* who) {
  if (m.rows != m.cols) throw DimensionError(std::string(who) + ": matrix is not square");
}

constexpr double kPivotRel = 1e-14;

}  // namespace

Mat::Mat(int r, int c, double fill) : rows(r), cols(c) {
  if (r < 0 || c < 0) throw DimensionError("Mat: negative dimension");
  data.assign(static_cast<std::size_t>(r) * c, fill);
}

Mat::Mat(int r, int c, std::vector<double> entries) : rows(r), cols(c), data(std::move(entries)) {
  if (r < 0 || c < 0) throw DimensionError("Mat: negative dimension");
  if (data.size() != static_cast<std::size_t>(r) * c)
    throw DimensionError("Mat: entry count does not match dimensions");
  for (double v : data)
    if (!std::isfinite(v)) throw DomainError("Mat: nonfinite entry");
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("Mat +: shape mismatch");
  Mat c = a;
  for (std::size_t k = 0; k < c.data.size(); ++k) c.data[k] += b.data[k];
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("Mat -: shape mismatch");
  Mat c = a;
  for (std::size_t k = 0; k < c.data.size(); ++k) c.data[k] -= b.data[k];
  return c;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw DimensionError("Mat *: shape mismatch");
  Mat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat operator*(double s, const Mat& a) {
  Mat c = a;
  for (double& v : c.data) v *= s;
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

Vec mat_vec(const Mat& a, const Vec& x) {
  if (a.cols != static_cast<int>(x.size())) throw DimensionError("mat_vec: shape mismatch");
  Vec y(a.rows, 0.0);
  for (int i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double inf_norm(const Mat& a) {
  double best = 0.0;
  for (int i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols; ++j) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double inf_norm(const Vec& x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v));
  return best;
}

double two_norm(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

LuFactors lu_factor(const Mat& m) {
  require_square(m, "lu_factor");
  const int n = m.rows;
  const double tol = kPivotRel * inf_norm(m);
  LuFactors f{m, std::vector<int>(n), 1};
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  Mat& a = f.lu;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= tol)
      throw SingularMatrixError("lu_factor: pivot below threshold in column " + std::to_string(k));
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    const double pivot = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= pivot;
      const double lik = a(i, k);
      if (lik == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
  return f;
}

Vec lu_solve(const LuFactors& f, const Vec& b) {
  const int n = f.lu.rows;
  if (static_cast<int>(b.size()) != n) throw DimensionError("lu_solve: rhs length mismatch");
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

Vec lu_solve(const Mat& m, const Vec& b) { return lu_solve(lu_factor(m), b); }

Mat lu_solve(const Mat& m, const Mat& b) {
  if (m.rows != b.rows) throw DimensionError("lu_solve: rhs rows mismatch");
  const LuFactors f = lu_factor(m);
  Mat x(b.rows, b.cols);
  Vec col(b.rows);
  for (int j = 0; j < b.cols; ++j) {
    for (int i = 0; i < b.rows; ++i) col[i] = b(i, j);
    Vec sol = lu_solve(f, col);
    for (int i = 0; i < b.rows; ++i) x(i, j) = sol[i];
  }
  return x;
}

double determinant(const Mat& m) {
  require_square(m, "determinant");
  LuFactors f;
  try {
    f = lu_factor(m);
  } catch (const SingularMatrixError&) {
    return 0.0;
  }
  double d = f.sign;
  for (int i = 0; i < m.rows; ++i) d *= f.lu(i, i);
  return d;
}

namespace {

// Householder similarity reduction to upper Hessenberg form, in place.
void hessenberg(Mat& a) {
  const int n = a.rows;
  Vec v(n);
  for (int k = 1; k < n - 1; ++k) {
    double scale = 0.0;
    for (int i = k; i < n; ++i) scale += std::abs(a(i, k - 1));
    if (scale == 0.0) continue;
    double h = 0.0;
    for (int i = k; i < n; ++i) {
      v[i] = a(i, k - 1) / scale;
      h += v[i] * v[i];
    }
    double g = std::sqrt(h);
    if (v[k] > 0.0) g = -g;
    h -= v[k] * g;
    v[k] -= g;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < n; ++i) s += v[i] * a(i, j);
      s /= h;
      for (int i = k; i < n; ++i) a(i, j) -= s * v[i];
    }
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k; j < n; ++j) s += a(i, j) * v[j];
      s /= h;
      for (int j = k; j < n; ++j) a(i, j) -= s * v[j];
    }
    a(k, k - 1) = scale * g;
    for (int i = k + 1; i < n; ++i) a(i, k - 1) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix. Classic in-place
// formulation; destroys a. Throws after 30 sweeps on one eigenvalue.
std::vector<Complex> hqr(Mat& a) {
  const int n = a.rows;
  std::vector<Complex> w(n);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
  if (anorm == 0.0) return w;
  const double eps = std::numeric_limits<double>::epsilon();
  int nn = n - 1;
  double t = 0.0;
  int its = 0;
  while (nn >= 0) {
    int l = nn;
    for (; l >= 1; --l) {
      double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
      if (s == 0.0) s = anorm;
      if (std::abs(a(l, l - 1)) <= eps * s) {
        a(l, l - 1) = 0.0;
        break;
      }
    }
    double x = a(nn, nn);
    if (l == nn) {
      w[nn--] = Complex(x + t, 0.0);
      its = 0;
    } else if (l == nn - 1) {
      const double y = a(nn - 1, nn - 1);
      const double prod = a(nn, nn - 1) * a(nn - 1, nn);
      const double p = 0.5 * (y - x);
      const double q = p * p + prod;
      double z = std::sqrt(std::abs(q));
      x += t;
      if (q >= 0.0) {
        z = p + (p >= 0.0 ? z : -z);
        w[nn - 1] = w[nn] = Complex(x + z, 0.0);
        if (z != 0.0) w[nn] = Complex(x - prod / z, 0.0);
      } else {
        w[nn - 1] = Complex(x + p, z);
        w[nn] = Complex(x + p, -z);
      }
      nn -= 2;
      its = 0;
    } else {
      if (its == 30)
        throw ConvergenceError("eigenvalues: QR sweep cap reached, trailing subdiagonal " +
                               std::to_string(std::abs(a(nn, nn - 1))));
      double y = a(nn - 1, nn - 1);
      double prod = a(nn, nn - 1) * a(nn - 1, nn);
      if (its == 10 || its == 20) {
        // exceptional shift to break symmetry-induced stalls
        t += x;
        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
        y = x = 0.75 * s;
        prod = -0.4375 * s * s;
      }
      ++its;
      double p = 0.0, q = 0.0, r = 0.0;
      int m = nn - 2;
      for (; m >= l; --m) {
        const double z = a(m, m);
        const double rr = x - z;
        const double ss = y - z;
        p = (rr * ss - prod) / a(m + 1, m) + a(m, m + 1);
        q = a(m + 1, m + 1) - z - rr - ss;
        r = a(m + 2, m + 1);
        const double s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v =
            std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
        if (u <= eps * v) break;
      }
      if (m < l) m = l;
      for (int i = m + 2; i <= nn; ++i) {
        a(i, i - 2) = 0.0;
        if (i != m + 2) a(i, i - 3) = 0.0;
      }
      for (int k = m; k <= nn - 1; ++k) {
        if (k != m) {
          p = a(k, k - 1);
          q = a(k + 1, k - 1);
          r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        double s = std::sqrt(p * p + q * q + r * r);
        if (p < 0.0) s = -s;
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) a(k, k - 1) = -a(k, k - 1);
        } else {
          a(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        const double yy = q / s;
        const double zz = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          double pp = a(k, j) + q * a(k + 1, j);
          if (k != nn - 1) {
            pp += r * a(k + 2, j);
            a(k + 2, j) -= pp * zz;
          }
          a(k + 1, j) -= pp * yy;
          a(k, j) -= pp * x;
        }
        const int mmin = (nn < k + 3) ? nn : k + 3;
        for (int i = l; i <= mmin; ++i) {
          double pp = x * a(i, k) + yy * a(i, k + 1);
          if (k != nn - 1) {
            pp += zz * a(i, k + 2);
            a(i, k + 2) -= pp * r;
          }
          a(i, k + 1) -= pp * q;
          a(i, k) -= pp;
        }
      }
    }
  }
  return w;
}

}  // namespace

std::vector<Complex> eigenvalues(const Mat& m) {
  require_square(m, "eigenvalues");
  if (m.rows > 8)
    throw DimensionError("eigenvalues: small-matrix routine, n <= 8 supported");
  for (double v : m.data)
    if (!std::isfinite(v)) throw DomainError("eigenvalues: nonfinite entry");
  Mat a = m;
  if (a.rows > 2) hessenberg(a);
  auto w = hqr(a);
  std::sort(w.begin(), w.end(), [](const Complex& u, const Complex& v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  return w;
}

double spectral_radius(const Mat& m) {
  double best = 0.0;
  for (const Complex& z : eigenvalues(m)) best = std::max(best, std::abs(z));
  return best;
}

}  // namespace sspmprk
