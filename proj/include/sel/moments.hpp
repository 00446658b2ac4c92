#pragma once

#include <optional>

namespace sel::moments {

/// Coefficients of the reduced three-equation moment system, functions of
/// the dimensionless pump omega, spontaneous rate eta and cavity rate tau.
struct CoefficientTable {
  double a02, a03, a10, a11, a12, a20, a21, a22;
  double c11, c12, c21, c22, c23, c31, c32, c33;
  double b;  // right side of the first equation
};

/// DegenerateParams when omega + eta <= 0 or tau <= 0.
CoefficientTable coefficient_table(double omega, double eta, double tau);

/// Mandel Q = (<n^2> - <n>^2)/<n> - 1; empty when <n> < 1e-12.
std::optional<double> mandel_q(double mean_n, double mean_n2);

struct MomentSolution {
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  double mean_n3 = 0.0;
  std::optional<double> mandel_q;
  double det_delta = 0.0;
  /// Negative <n> or negative variance: the reduced system is outside the
  /// regime where it describes the laser. Numbers are still returned.
  bool out_of_regime = false;
};

/// Solves
///   c11 <n> + c12 <n^2>              = B
///   c21 <n> + c22 <n^2> + c23 <n^3>  = a10
///   c31 <n> + c32 <n^2> + c33 <n^3>  = 0
/// by pivoted elimination. NearSingularSystem when |det| < 1e-12 ||M||^3.
MomentSolution solve_moments(double omega, double eta, double tau);
MomentSolution solve_moments(const CoefficientTable& table);

/// The closed-form Cramer-rule numerators over the determinant, kept as an
/// independent cross-check of solve_moments.
struct CramerCheck {
  double mean_n, mean_n2, mean_n3;
  double det_delta;
  /// max relative difference against the direct solve
  double max_rel_discrepancy;
};

CramerCheck cramer_cross_check(const CoefficientTable& table);

}  // namespace sel::moments
