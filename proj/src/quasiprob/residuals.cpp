#include "sel/quasiprob/residuals.hpp"

#include <algorithm>
#include <cmath>

#include "sel/numerics/quadrature.hpp"

namespace sel::quasiprob {

std::vector<double> standard_residual_grid() {
  std::vector<double> grid;
  grid.reserve(500);
  for (int j = 1; j <= 500; ++j) grid.push_back(0.01 * j);
  return grid;
}

namespace {

double integral_of_abs(const ExpPoly& f) {
  if (f.empty()) return 0.0;
  numerics::QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.rel_tol = 1e-8;
  spec.max_subdivisions = 2000;
  return numerics::integrate_semi_infinite([&f](double x) { return std::abs(f(x)); }, spec);
}

}  // namespace

ResidualReport assemble_report(std::string label,
                               const std::vector<std::pair<std::string, ExpPoly>>& terms,
                               std::span<const double> grid) {
  ResidualReport report;
  report.label = std::move(label);
  for (const auto& [name, term] : terms) {
    const double m = term.max_abs_on(grid);
    report.terms.push_back({name, m, term});
    report.scale = std::max(report.scale, m);
    report.residual += term;
  }
  report.max_abs = report.residual.max_abs_on(grid);
  report.integral_abs = integral_of_abs(report.residual);
  return report;
}

std::vector<TermFit> localize_residual(const ResidualReport& report, std::span<const double> grid) {
  std::vector<double> r(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) r[i] = report.residual(grid[i]);

  std::vector<TermFit> fits;
  for (const auto& t : report.terms) {
    std::vector<double> tv(grid.size());
    double rt = 0.0;
    double tt = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      tv[i] = t.term(grid[i]);
      rt += r[i] * tv[i];
      tt += tv[i] * tv[i];
    }
    if (tt == 0.0) continue;
    const double shift = -rt / tt;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(r[i] + shift * tv[i]));
    fits.push_back({t.name, 1.0 + shift, report.scale > 0.0 ? worst / report.scale : worst});
  }
  std::stable_sort(fits.begin(), fits.end(),
                   [](const TermFit& a, const TermFit& b) { return a.remaining < b.remaining; });
  return fits;
}

ResidualReport relation_residual(const RadialQuasiSet& set,
                                     const lindblad::LaserParams& params) {
  const double kappa_over_g = params.cavity_decay() / params.coupling();
  const ExpPoly rhs = kappa_over_g * (set.q + set.q.derivative()).times_power(1);
  const auto grid = standard_residual_grid();
  return assemble_report("relation", {{"rho_sigma", set.rho_sigma}, {"-(kappa/g) I^1/2 (Q + Q')", -1.0 * rhs}},
                         grid);
}

std::array<ResidualReport, 2> stationary_pair_residual(const RadialQuasiSet& set,
                                                  const lindblad::LaserParams& params) {
  const double w = params.omega();
  const double e = params.eta();
  const double t = params.tau();
  const ExpPoly& q = set.q;
  const ExpPoly& d = set.d;
  const ExpPoly& rs = set.rho_sigma;
  const auto grid = standard_residual_grid();

  const ExpPoly bracket = 0.5 * rs.times_power(1) - t * d.times_power(2) -
                          t * d.derivative().times_power(2);
  ResidualReport first = assemble_report(
      "pair.1",
      {{"(w-e) Q", (w - e) * q},
       {"-(w+e) D", -(w + e) * d},
       {"-I^1/2 rs", -1.0 * rs.times_power(1)},
       {"-d/dI[I^1/2 rs/2 - t I D - t I D']", -1.0 * bracket.derivative()}},
      grid);

  ResidualReport second = assemble_report(
      "pair.2",
      {{"(w+e) rs", (w + e) * rs},
       {"t/(2I) rs", (0.5 * t) * rs.times_power(-2)},
       {"-I^1/2 [2D + (D-Q)']", -1.0 * (2.0 * d + (d - q).derivative()).times_power(1)},
       {"-2t d/dI[I (rs + rs')]", (-2.0 * t) * (rs + rs.derivative()).times_power(2).derivative()}},
      grid);
  return {std::move(first), std::move(second)};
}

std::array<double, 4> OdeCoefficients::polynomial(int nu) const {
  switch (nu) {
    case 5: return {0.0, 0.0, b02, b03};
    case 4: return {0.0, b11, b12, b13};
    case 3: return {b20, b21, b22, b23};
    case 2: return {b30, b31, b32, b33};
    case 1: return {b40, b41, b42, 0.0};
    case 0: return {b50, b51, b52, 0.0};
    default: return {0.0, 0.0, 0.0, 0.0};
  }
}

double OdeCoefficients::f(int nu, double intensity) const {
  const auto p = polynomial(nu);
  return ((p[3] * intensity + p[2]) * intensity + p[1]) * intensity + p[0];
}

std::vector<OdeCoefficients::Named> OdeCoefficients::named() const {
  return {{"b02", b02, 5, 2}, {"b03", b03, 5, 3}, {"b11", b11, 4, 1}, {"b12", b12, 4, 2},
          {"b13", b13, 4, 3}, {"b20", b20, 3, 0}, {"b21", b21, 3, 1}, {"b22", b22, 3, 2},
          {"b23", b23, 3, 3}, {"b30", b30, 2, 0}, {"b31", b31, 2, 1}, {"b32", b32, 2, 2},
          {"b33", b33, 2, 3}, {"b40", b40, 1, 0}, {"b41", b41, 1, 1}, {"b42", b42, 1, 2},
          {"b50", b50, 0, 0}, {"b51", b51, 0, 1}, {"b52", b52, 0, 2}};
}

OdeCoefficients ode5_coefficients(double omega, double eta, double tau) {
  const double w = omega;
  const double e = eta;
  const double t = tau;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  const double s = w + e + t;

  OdeCoefficients b{};
  b.b02 = -2.0 * t3 * s;
  b.b03 = 4.0 * t4;
  b.b11 = -12.0 * t3 * s;
  b.b12 = 2.0 * t3 * (7.0 * t - 3.0 * w - 3.0 * e);
  b.b13 = 12.0 * t4;
  b.b20 = -12.0 * t3 * s;
  b.b21 = -t2 * (26.0 * e * t - 3.0 * e * e + 21.0 * t2 - 6.0 * e * w + 26.0 * t * w - 3.0 * w * w);
  b.b22 = 12.0 * t3 * (4.0 * t - w - e);
  b.b23 = 12.0 * t4;
  b.b30 = -2.0 * t2 * (8.0 * e * t - 3.0 * e * e + 15.0 * t2 - 6.0 * e * w + 8.0 * t * w - 3.0 * w * w);
  b.b31 = -2.0 * t *
          (e + t - 3.0 * e * e * t + 13.0 * e * t2 + w - 6.0 * e * t * w + 13.0 * t2 * w -
           3.0 * t * w * w);
  b.b32 = 2.0 * t2 * (2.0 - 7.0 * e * t + 23.0 * t2 - 7.0 * t * w);
  b.b33 = 4.0 * t4;
  b.b40 = -e * e * e * t + e * e * (8.0 * t2 - 1.0 - 3.0 * t * w) -
          t * (3.0 * t + 24.0 * t3 + 3.0 * w - t2 * w - 8.0 * t * w * w + w * w * w) +
          e * (t3 - w + 16.0 * t2 * w - t * (4.0 + 3.0 * w * w));
  b.b41 = t * (5.0 * e * e * t + 15.0 * t3 - 4.0 * w - 20.0 * t2 * w -
               2.0 * e * (1.0 + 10.0 * t2 - 5.0 * t * w) + t * (5.0 * w * w - 2.0));
  b.b42 = 2.0 * t2 * (4.0 - 3.0 * e * t + 7.0 * t2 - 3.0 * t * w);
  b.b50 = -e * e * e * t - 6.0 * t4 + 5.0 * t3 * w + w * w - t * w * w * w +
          e * e * (2.0 * t2 - 1.0 - 3.0 * t * w) + e * t * (5.0 * t2 - 4.0 + 4.0 * t * w - 3.0 * w * w) +
          t2 * (2.0 * w * w - 3.0);
  b.b51 = 2.0 * t * (e * e * t + 3.0 * t3 - 2.0 * w - 4.0 * t2 * w + t * w * w + 2.0 * e * t * (w - 2.0 * t));
  b.b52 = 4.0 * t2;
  return b;
}

ResidualReport ode5_residual(const ExpPoly& q, const OdeCoefficients& coeffs,
                             std::span<const double> grid) {
  std::array<ExpPoly, 6> derivs;
  derivs[0] = q;
  for (int nu = 1; nu <= 5; ++nu) derivs[nu] = derivs[nu - 1].derivative();

  std::vector<std::pair<std::string, ExpPoly>> terms;
  for (const auto& c : coeffs.named()) {
    terms.emplace_back(std::string(c.name) + " I^" + std::to_string(c.power) + " Q^(" +
                           std::to_string(c.derivative_order) + ")",
                       c.value * derivs[c.derivative_order].times_power(2 * c.power));
  }
  ResidualReport report = assemble_report("ode5", terms, grid);

  ExpPoly f0q;
  for (int j = 0; j < 4; ++j) f0q += coeffs.polynomial(0)[j] * q.times_power(2 * j);
  report.scale = f0q.max_abs_on(grid);
  return report;
}

ResidualReport ode5_residual(const ExpPoly& q, const OdeCoefficients& coeffs) {
  const auto grid = standard_residual_grid();
  return ode5_residual(q, coeffs, grid);
}

}  // namespace sel::quasiprob
