#pragma once

#include <array>
#include <string>
#include <vector>

#include "sel/liouvillian.hpp"
#include "sel/quasiprob/exp_poly.hpp"
#include "sel/quasiprob/husimi.hpp"

namespace sel::quasiprob {

/// I = 0.01 j, j = 1..500.
std::vector<double> standard_residual_grid();

struct TermNorm {
  std::string name;
  double max_abs;
  ExpPoly term;
};

struct ResidualReport {
  std::string label;
  ExpPoly residual;
  double max_abs = 0.0;       // over the grid
  double integral_abs = 0.0;  // integral_0^inf |r| dI
  double scale = 0.0;         // largest single-term magnitude on the grid
  std::vector<TermNorm> terms;

  /// max_abs / scale, 0 when every term vanishes.
  double normalized() const { return scale > 0.0 ? max_abs / scale : 0.0; }
};

/// Builds a report from named terms whose sum is the residual.
ResidualReport assemble_report(std::string label, const std::vector<std::pair<std::string, ExpPoly>>& terms,
                               std::span<const double> grid);

/// If one term alone were rescaled by `factor` (least squares on the grid),
/// the normalized residual would drop to `remaining`.
struct TermFit {
  std::string name;
  double factor;
  double remaining;
};

/// One fit per term, best (smallest remaining) first.
std::vector<TermFit> localize_residual(const ResidualReport& report, std::span<const double> grid);

/// r = rho_sigma - (kappa/g) I^{1/2} (q + q')
ResidualReport relation_residual(const RadialQuasiSet& set, const lindblad::LaserParams& params);

/// Both stationary phase-averaged equations for (D, rho_sigma), written with
/// the dimensionless rates:
///   (w - e) Q - (w + e) D - I^{1/2} rs - d/dI[ I^{1/2} rs / 2 - t I D - t I D' ] = 0
///   (w + e) rs + t/(2I) rs - I^{1/2} [2 D + (D - Q)'] - 2 t d/dI[ I (rs + rs') ] = 0
std::array<ResidualReport, 2> stationary_pair_residual(const RadialQuasiSet& set,
                                                  const lindblad::LaserParams& params);

/// Coefficients b_{ij} of sum_{nu=0..5} f_nu(I) Q^{(nu)}(I) = 0, where b_{ij}
/// multiplies I^j Q^{(5-i)}.
struct OdeCoefficients {
  double b02, b03;
  double b11, b12, b13;
  double b20, b21, b22, b23;
  double b30, b31, b32, b33;
  double b40, b41, b42;
  double b50, b51, b52;

  /// Polynomial coefficients of f_nu in powers I^0..I^3.
  std::array<double, 4> polynomial(int nu) const;
  /// f_nu(I)
  double f(int nu, double intensity) const;

  struct Named {
    const char* name;
    double value;
    int derivative_order;  // nu
    int power;             // j
  };
  std::vector<Named> named() const;
};

OdeCoefficients ode5_coefficients(double omega, double eta, double tau);

/// R = sum_nu f_nu q^{(nu)}, exact in the ExpPoly family; terms are reported
/// per b-coefficient. normalized() divides by max |f_0 q| on the grid.
ResidualReport ode5_residual(const ExpPoly& q, const OdeCoefficients& coeffs,
                             std::span<const double> grid);
ResidualReport ode5_residual(const ExpPoly& q, const OdeCoefficients& coeffs);

}  // namespace sel::quasiprob
