#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sspmprk/errors.hpp"
#include "sspmprk/linalg.hpp"

using namespace sspmprk;

namespace {

void check_eigs(const Mat& m, const std::vector<Complex>& want, double tol) {
  const std::vector<Complex> got = eigenvalues(m);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(got[i] - want[i]) <= tol);
  }
}

Mat random_matrix(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("matrix construction guards") {
  CHECK_THROWS_AS(Mat(2, 2, std::vector<double>{1.0, 2.0, 3.0}), DimensionError);
  CHECK_THROWS_AS(Mat(2, 2, std::vector<double>{1.0, 2.0, 3.0, std::nan("")}), DomainError);
  const Mat i3 = Mat::identity(3);
  CHECK(i3(0, 0) == 1.0);
  CHECK(i3(0, 1) == 0.0);
}

TEST_CASE("lu solve reproduces a known solution") {
  const Mat a(3, 3, {4.0, 1.0, -2.0, 1.0, 5.0, 1.0, -2.0, 1.0, 6.0});
  const Vec x{1.0, -2.0, 3.0};
  const Vec b = mat_vec(a, x);
  const Vec got = lu_solve(a, b);
  for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(x[i]).epsilon(1e-13));
}

TEST_CASE("lu solve with matrix right-hand side inverts") {
  const Mat a(3, 3, {2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0});
  const Mat inv = lu_solve(a, Mat::identity(3));
  const Mat prod = a * inv;
  CHECK(inf_norm(prod - Mat::identity(3)) <= 1e-13);
}

TEST_CASE("singular systems are rejected, singular determinants are zero") {
  const Mat s(2, 2, {1.0, 2.0, 2.0, 4.0});
  CHECK_THROWS_AS(lu_factor(s), SingularMatrixError);
  CHECK_THROWS_AS(lu_solve(s, Vec{1.0, 1.0}), SingularMatrixError);
  CHECK(determinant(s) == 0.0);
}

TEST_CASE("determinant matches cofactor expansion") {
  const Mat a(3, 3, {1.0, 2.0, 3.0, 0.0, 4.0, 5.0, 1.0, 0.0, 6.0});
  // 1*(24-0) - 2*(0-5) + 3*(0-4) = 22
  CHECK(determinant(a) == doctest::Approx(22.0).epsilon(1e-13));
}

TEST_CASE("eigenvalues of structured matrices") {
  SUBCASE("diagonal") {
    const Mat d(3, 3, {3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0});
    check_eigs(d, {{-1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}, 1e-12);
  }
  SUBCASE("upper triangular") {
    const Mat t(3, 3, {5.0, 1.0, 2.0, 0.0, -2.0, 7.0, 0.0, 0.0, 1.0});
    check_eigs(t, {{-2.0, 0.0}, {1.0, 0.0}, {5.0, 0.0}}, 1e-12);
  }
  SUBCASE("rotation-scaling gives a conjugate pair") {
    const double c = std::cos(0.7), s = std::sin(0.7);
    const Mat r(2, 2, {c, -s, s, c});
    check_eigs(r, {{c, -s}, {c, s}}, 1e-14);
    const auto eigs = eigenvalues(r);
    CHECK(eigs[0] == std::conj(eigs[1]));
  }
  SUBCASE("identity and zero") {
    check_eigs(Mat::identity(2), {{1.0, 0.0}, {1.0, 0.0}}, 1e-14);
    check_eigs(Mat(2, 2), {{0.0, 0.0}, {0.0, 0.0}}, 1e-14);
  }
  SUBCASE("1x1") { check_eigs(Mat(1, 1, {-4.5}), {{-4.5, 0.0}}, 0.0); }
}

TEST_CASE("eigenvalues of frozen dense fixtures") {
  // validated against an independent QR implementation
  const Mat m4(4, 4, {1.644, -0.367, 2.152,  1.184,  -2.435, 2.854,  1.567,  1.716,
                      -2.231, -0.298, -0.775, 2.561,  0.863,  1.937,  -0.340, -1.637});
  check_eigs(m4,
             {{-1.591420034977610, -1.911705215095292},
              {-1.591420034977610, 1.911705215095292},
              {2.045723015278199, 0.0},
              {3.223117054677021, 0.0}},
             1e-9);
  CHECK(determinant(m4) == doctest::Approx(40.796179101593).epsilon(1e-10));

  const Mat m5(5, 5, {0.328,  -2.617, 1.966,  0.790,  1.549,  -0.873, 2.824,  2.359,  1.670,
                      -1.832, -0.200, -2.737, -2.074, 1.098,  1.469,  2.805,  -1.045, -0.777,
                      -0.183, -1.863, -2.220, -0.146, -1.639, 1.019,  -0.377});
  check_eigs(m5,
             {{-1.604427793603861, -2.919387209349763},
              {-1.604427793603861, 2.919387209349763},
              {-1.095354432512859, 0.0},
              {2.411105009860293, -2.570943776468035},
              {2.411105009860293, 2.570943776468035}},
             1e-9);
  CHECK(determinant(m5) == doctest::Approx(-151.00572348323018).epsilon(1e-10));
}

TEST_CASE("companion matrix of (z^2+z+1)(z^2-2z+5)") {
  const Mat c(4, 4, {1.0, -4.0, -3.0, -5.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0,
                     0.0});
  check_eigs(c,
             {{-0.5, -0.8660254037844378},
              {-0.5, 0.8660254037844378},
              {1.0, -2.0},
              {1.0, 2.0}},
             1e-10);
}

TEST_CASE("spectra of the built-in rate matrices") {
  const Mat real3(3, 3, {-200.0, 100.0, 100.0, 100.0, -400.0, 100.0, 100.0, 300.0, -200.0});
  check_eigs(real3, {{-500.0, 0.0}, {-300.0, 0.0}, {0.0, 0.0}}, 1e-8);

  const Mat complex3(3, 3, {-400.0, 300.0, 100.0, 200.0, -400.0, 300.0, 200.0, 100.0, -400.0});
  check_eigs(complex3, {{-600.0, -100.0}, {-600.0, 100.0}, {0.0, 0.0}}, 1e-8);

  const Mat dk4(4, 4, {-200.0, 0.0, 0.0, 100.0, 0.0, -400.0, 300.0, 0.0, 0.0, 400.0, -300.0, 0.0,
                       200.0, 0.0, 0.0, -100.0});
  check_eigs(dk4, {{-700.0, 0.0}, {-300.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}, 1e-8);
  CHECK(spectral_radius(dk4) == doctest::Approx(700.0).epsilon(1e-10));
}

TEST_CASE("trace and determinant match eigenvalue sums and products") {
  std::mt19937 rng(911);
  for (int n : {2, 3, 4, 5, 6}) {
    const Mat m = random_matrix(rng, n);
    const auto eigs = eigenvalues(m);
    Complex sum = 0.0, prod = 1.0;
    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += m(i, i);
    for (Complex e : eigs) {
      sum += e;
      prod *= e;
    }
    CAPTURE(n);
    CHECK(std::abs(sum - trace) <= 1e-9 * (1.0 + std::abs(trace)));
    const double det = determinant(m);
    CHECK(std::abs(prod - det) <= 1e-8 * (1.0 + std::abs(det)));
    CHECK(std::abs(prod.imag()) <= 1e-8 * (1.0 + std::abs(det)));
  }
}

TEST_CASE("transpose has the same spectrum") {
  std::mt19937 rng(77);
  const Mat m = random_matrix(rng, 4);
  const auto a = eigenvalues(m);
  const auto b = eigenvalues(transpose(m));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9);
}

TEST_CASE("eigenvalue guards") {
  CHECK_THROWS_AS(eigenvalues(Mat(9, 9)), DimensionError);
  CHECK_THROWS_AS(eigenvalues(Mat(2, 3)), DimensionError);
}
