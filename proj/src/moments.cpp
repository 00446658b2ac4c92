#include "sel/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sel/error.hpp"
#include "sel/numerics/complex_matrix.hpp"
#include "sel/numerics/linear_solve.hpp"

namespace sel::moments {

CoefficientTable coefficient_table(double omega, double eta, double tau) {
  const double w = omega;
  const double e = eta;
  const double t = tau;
  if (!(w + e > 0.0)) throw DegenerateParams("omega + eta must be > 0");
  if (!(t > 0.0)) throw DegenerateParams("tau must be > 0");

  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;

  CoefficientTable c{};
  c.a02 = t3 / 2.0 * (t - w - e);
  c.a03 = t4;
  c.a10 = w / 4.0 * (t - w - e);
  c.a11 = t / 4.0 *
          (3.0 * e * e * t + 9.0 * t3 + 4.0 * w - 12.0 * t2 * w +
           e * (2.0 - 12.0 * t2 + 6.0 * t * w) + t * (3.0 * w * w - 2.0));
  c.a12 = t2 / 2.0 * (7.0 * t2 - 3.0 * t * e - 3.0 * t * w - 2.0);
  c.a20 = 0.25 * (6.0 * t4 + w * w - e * e * e * t - 11.0 * t3 * w - t * w * w * w +
                  e * e * (6.0 * t2 - 3.0 * t * w - 1.0) +
                  e * t * (12.0 * t * w + 4.0 - 11.0 * t2 - 3.0 * w * w) +
                  t2 * (6.0 * w * w - 3.0));
  c.a21 = t / 2.0 *
          (e * e * t + 3.0 * t3 - 2.0 * w - 4.0 * t2 * w + t * w * w + 2.0 * e * t * (w - 2.0 * t));
  c.a22 = t2;

  // A, grouped exactly as (w+e+t)/(2(w+e)) - ((w-e+t)/(2t) - (w+e+t)^2/2)
  const double s = w + e + t;
  c.c11 = s / (2.0 * (w + e)) - ((w - e + t) / (2.0 * t) - s * s / 2.0);
  c.c12 = 1.0;
  c.b = w * s / (2.0 * t * (w + e));

  c.c21 = 6.0 * c.a02 - 12.0 * c.a03 - 2.0 * c.a11 + 3.0 * c.a12 + c.a20 - c.a21 + 2.0 * c.a22;
  c.c22 = 12.0 * c.a03 - 3.0 * c.a12 + c.a21 - 3.0 * c.a22;
  c.c23 = c.a22;
  c.c31 = 40.0 * c.a03 + 3.0 * c.a11 - 8.0 * c.a12 - c.a20 + 2.0 * c.a21 - 12.0 * c.a02 -
          2.0 * c.a10;
  c.c32 = -60.0 * c.a03 - 3.0 * c.a11 + 12.0 * c.a12 + c.a20 - 3.0 * c.a21 + 12.0 * c.a02;
  c.c33 = 20.0 * c.a03 - 4.0 * c.a12 + c.a21;
  return c;
}

std::optional<double> mandel_q(double mean_n, double mean_n2) {
  if (mean_n < 1e-12) return std::nullopt;
  return (mean_n2 - mean_n * mean_n) / mean_n - 1.0;
}

namespace {

numerics::ComplexMatrix system_matrix(const CoefficientTable& c) {
  numerics::ComplexMatrix m(3, 3);
  m(0, 0) = c.c11;
  m(0, 1) = c.c12;
  m(1, 0) = c.c21;
  m(1, 1) = c.c22;
  m(1, 2) = c.c23;
  m(2, 0) = c.c31;
  m(2, 1) = c.c32;
  m(2, 2) = c.c33;
  return m;
}

double determinant(const CoefficientTable& c) {
  return c.c11 * (c.c22 * c.c33 - c.c23 * c.c32) - c.c12 * (c.c21 * c.c33 - c.c23 * c.c31);
}

}  // namespace

MomentSolution solve_moments(const CoefficientTable& table) {
  const numerics::ComplexMatrix m = system_matrix(table);
  const double delta = determinant(table);
  const double norm = m.norm_inf();
  if (!(std::abs(delta) >= 1e-12 * norm * norm * norm)) {
    throw NearSingularSystem("moment system determinant " + num(delta) +
                             " against norm " + num(norm));
  }
  const std::array<numerics::Complex, 3> rhs{table.b, table.a10, 0.0};
  const numerics::ComplexVector x = numerics::solve_linear(m, rhs);

  MomentSolution out;
  out.mean_n = x[0].real();
  out.mean_n2 = x[1].real();
  out.mean_n3 = x[2].real();
  out.det_delta = delta;
  out.mandel_q = mandel_q(out.mean_n, out.mean_n2);
  out.out_of_regime = out.mean_n < 0.0 || out.mean_n2 < out.mean_n * out.mean_n;
  return out;
}

MomentSolution solve_moments(double omega, double eta, double tau) {
  return solve_moments(coefficient_table(omega, eta, tau));
}

CramerCheck cramer_cross_check(const CoefficientTable& c) {
  const double delta = determinant(c);
  CramerCheck out{};
  out.det_delta = delta;
  out.mean_n = (c.b * (c.c22 * c.c33 - c.c23 * c.c32) - c.a10 * c.c33) / delta;
  out.mean_n2 = (c.b * (c.c23 * c.c31 - c.c21 * c.c33) + c.a10 * c.c11 * c.c33) / delta;
  out.mean_n3 = (c.b * (c.c21 * c.c32 - c.c22 * c.c31) + c.a10 * (c.c31 - c.c11 * c.c32)) / delta;

  const MomentSolution direct = solve_moments(c);
  auto rel = [](double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
  };
  out.max_rel_discrepancy = std::max({rel(out.mean_n, direct.mean_n),
                                      rel(out.mean_n2, direct.mean_n2),
                                      rel(out.mean_n3, direct.mean_n3)});
  return out;
}

}  // namespace sel::moments
