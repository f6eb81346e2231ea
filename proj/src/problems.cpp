#include "sspmprk/problems.hpp"

#include <cmath>

#include "sspmprk/errors.hpp"

namespace sspmprk {

namespace {

TestProblem make_real3() {
  TestProblem p;
  p.id = "real3";
  p.system = make_linear_pds(
      Mat(3, 3, {-200.0, 100.0, 100.0, 100.0, -400.0, 100.0, 100.0, 300.0, -200.0}));
  p.y0 = {1.0, 9.0, 5.0};
  p.y_star = {5.0, 3.0, 7.0};
  p.invariants = {{1.0, 1.0, 1.0}};
  p.dominant_eigenvalue = Complex(-500.0, 0.0);
  p.exact = [](double t) {
    const double e3 = std::exp(-300.0 * t);
    const double e5 = std::exp(-500.0 * t);
    return Vec{5.0 - 4.0 * e3, 3.0 + 6.0 * e5, 7.0 + 4.0 * e3 - 6.0 * e5};
  };
  return p;
}

TestProblem make_complex3() {
  TestProblem p;
  p.id = "complex3";
  p.system = make_linear_pds(
      Mat(3, 3, {-400.0, 300.0, 100.0, 200.0, -400.0, 300.0, 200.0, 100.0, -400.0}));
  p.y0 = {9.0, 20.0, 8.0};
  p.y_star = {13.0, 14.0, 10.0};
  p.invariants = {{1.0, 1.0, 1.0}};
  p.dominant_eigenvalue = Complex(-600.0, 100.0);
  p.exact = [](double t) {
    // decaying rotation through the eigenplane of -600 +- 100i spanned by
    // v1 = (-1, 0, 1), v2 = (1, -1, 0)
    const double e = std::exp(-600.0 * t);
    const double c = std::cos(100.0 * t);
    const double s = std::sin(100.0 * t);
    const double q1 = -2.0 * e * c - 6.0 * e * s;  // coefficient of v1
    const double q2 = 2.0 * e * s - 6.0 * e * c;   // coefficient of v2
    return Vec{13.0 - q1 + q2, 14.0 - q2, 10.0 + q1};
  };
  return p;
}

TestProblem make_double_kernel4() {
  TestProblem p;
  p.id = "double-kernel4";
  p.system = make_linear_pds(Mat(4, 4, {-200.0, 0.0, 0.0, 100.0,  //
                                        0.0, -400.0, 300.0, 0.0,  //
                                        0.0, 400.0, -300.0, 0.0,  //
                                        200.0, 0.0, 0.0, -100.0}));
  p.y0 = {4.0, 1.0, 9.0, 1.0};
  p.y_star = {35.0 / 21.0, 90.0 / 21.0, 120.0 / 21.0, 70.0 / 21.0};
  p.invariants = {{1.0, 1.0, 1.0, 1.0}, {1.0, 2.0, 2.0, 1.0}};
  p.dominant_eigenvalue = Complex(-700.0, 0.0);
  p.exact = [](double t) {
    const double c1 = 30.0 / 7.0;
    const double c2 = 5.0 / 3.0;
    const double c3 = -23.0 / 7.0;
    const double c4 = 7.0 / 3.0;
    const double e7 = std::exp(-700.0 * t);
    const double e3 = std::exp(-300.0 * t);
    return Vec{c2 + c4 * e3, c1 + c3 * e7, c1 * 4.0 / 3.0 - c3 * e7, 2.0 * c2 - c4 * e3};
  };
  return p;
}

}  // namespace

const std::vector<std::string>& test_problem_ids() {
  static const std::vector<std::string> ids = {"real3", "complex3", "double-kernel4"};
  return ids;
}

TestProblem test_problem(const std::string& id) {
  if (id == "real3") return make_real3();
  if (id == "complex3") return make_complex3();
  if (id == "double-kernel4") return make_double_kernel4();
  throw ParameterError("test_problem: unknown id '" + id +
                       "' (known: real3, complex3, double-kernel4)");
}

Vec exact_solution(const TestProblem& prob, double t) {
  if (t < 0.0) throw ParameterError("exact_solution: t must be nonnegative");
  return prob.exact(t);
}

}  // namespace sspmprk
