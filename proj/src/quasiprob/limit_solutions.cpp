#include "sel/quasiprob/limit_solutions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sel/error.hpp"
#include "sel/numerics/finite_part.hpp"
#include "sel/numerics/special_functions.hpp"

namespace sel::quasiprob {

namespace {

// h(I) = cosh x + sinh x / x, x = sqrt(2I), as sum_k s_k I^k with
// s_k = 2^k (2k + 2) / (2k + 1)!. All terms are positive.
double series_coefficient(int k) {
  return std::exp(k * std::numbers::ln2 + std::log(2.0 * k + 2.0) - std::lgamma(2.0 * k + 2.0));
}

// Below this the positive power series is used; above, scaled closed forms.
constexpr double kSeriesLimit = 8.0;

struct HDerivs {
  double h, h1, h2;  // all multiplied by e^{-I}
};

HDerivs h_derivatives_series(double intensity) {
  double h = 0.0, h1 = 0.0, h2 = 0.0;
  double power = 1.0;  // I^k
  const double e = std::exp(-intensity);
  for (int k = 0; k < 200; ++k) {
    const double s = series_coefficient(k);
    const double term = s * power;
    h += term;
    if (k >= 1) h1 += k * s * std::pow(intensity, k - 1);
    if (k >= 2) h2 += k * (k - 1.0) * s * std::pow(intensity, k - 2);
    power *= intensity;
    if (k > 4 && term < 1e-18 * h) break;
  }
  return {h * e, h1 * e, h2 * e};
}

HDerivs h_derivatives_closed(double intensity) {
  const double x = std::sqrt(2.0 * intensity);
  const double e2 = std::exp(-2.0 * x);
  const double ch = 0.5 * (1.0 + e2);    // e^{-x} cosh x
  const double sh = -0.5 * std::expm1(-2.0 * x);  // e^{-x} sinh x
  const double phi = (x * ch - sh) / (x * x * x);  // e^{-x} (x cosh x - sinh x) / x^3
  const double scale = std::exp(x - intensity);
  const double h = ch + sh / x;
  const double h1 = sh / x + phi;
  const double h2 = (ch - 3.0 * phi) / (x * x);
  return {h * scale, h1 * scale, h2 * scale};
}

HDerivs h_derivatives(double intensity) {
  if (!(intensity >= 0.0)) throw DomainError("radial functions need I >= 0");
  return intensity <= kSeriesLimit ? h_derivatives_series(intensity)
                                   : h_derivatives_closed(intensity);
}

}  // namespace

double q2_normalization() {
  return 1.0 + std::sqrt(2.0 * std::numbers::e * std::numbers::pi) *
                   numerics::erf(1.0 / std::numbers::sqrt2);
}

AnalyticRadialFn vacuum_q() {
  auto value = [](double i) { return std::exp(-i); };
  return {"Q1", value, [](double i) { return -std::exp(-i); }, value, ExpPoly::monomial(1.0, 0)};
}

AnalyticRadialFn limit2_q(int series_terms) {
  const double z = q2_normalization();
  std::vector<ExpPoly::Term> terms;
  for (int k = 0; k < series_terms; ++k) terms.push_back({series_coefficient(k) / z, 2 * k});

  AnalyticRadialFn f;
  f.name = "Q2";
  f.value = [z](double i) { return numerics::stable_cosh_sinh_combo(i) / z; };
  // (e^{-I} h)' = e^{-I}(h' - h),  (e^{-I} h)'' = e^{-I}(h'' - 2h' + h)
  f.first = [z](double i) {
    const HDerivs d = h_derivatives(i);
    return (d.h1 - d.h) / z;
  };
  f.second = [z](double i) {
    const HDerivs d = h_derivatives(i);
    return (d.h2 - 2.0 * d.h1 + d.h) / z;
  };
  f.series = ExpPoly(std::move(terms));
  return f;
}

LimitSolutions limit_solutions() { return {vacuum_q(), limit2_q()}; }

AnalyticRadialFn p_function(double c0) {
  AnalyticRadialFn f;
  f.name = "P";
  f.value = [c0](double i) {
    if (i >= 0.5) return 0.0;
    return c0 * i * std::exp(i) / std::pow(1.0 - 2.0 * i, 1.5);
  };
  // P'/P = 1/I + 1 + 3/u,  u = 1 - 2I
  f.first = [c0](double i) {
    if (i >= 0.5) return 0.0;
    const double u = 1.0 - 2.0 * i;
    const double p = c0 * std::exp(i) / std::pow(u, 1.5);  // P / I
    return p * (1.0 + i + 3.0 * i / u);
  };
  f.second = [c0](double i) {
    if (i >= 0.5) return 0.0;
    const double u = 1.0 - 2.0 * i;
    const double p = c0 * std::exp(i) / std::pow(u, 1.5);
    // P'' = (P/I) [ ((I P'/P)^2 - 1)/I + 6 I/u^2 ],  I P'/P = 1 + I c,  c = 1 + 3/u
    const double c = 1.0 + 3.0 / u;
    return p * (c * (2.0 + i * c) + 6.0 * i / (u * u));
  };
  return f;
}

std::vector<double> limit_ode_grid() {
  std::vector<double> grid;
  for (int j = 5; j <= 600; ++j) {
    const double i = 0.01 * j;
    if (j >= 95 && j <= 105) continue;
    grid.push_back(i);
  }
  return grid;
}

double limit_ode_value(int limit_case, const AnalyticRadialFn& f, double i) {
  switch (limit_case) {
    case 1: return f.first(i) + f.value(i);
    case 2:
      return 2.0 * i * (1.0 - i) * f.second(i) + (3.0 + 3.0 * i - 4.0 * i * i) * f.first(i) +
             (1.0 + 2.0 * i - 2.0 * i * i) * f.value(i);
    default: throw DomainError("limit case must be 1 or 2");
  }
}

LimitResidual limit_ode_residual(int limit_case, const AnalyticRadialFn& f) {
  LimitResidual out{limit_case, 0.0, 0.0};
  for (double i : limit_ode_grid()) {
    const double r = std::abs(limit_ode_value(limit_case, f, i));
    if (r > out.max_abs) {
      out.max_abs = r;
      out.at_intensity = i;
    }
  }
  return out;
}

namespace {

constexpr double kSingularPoint = 0.5;

// f.p. integral_0^inf I' I0(2 sqrt(I I')) / (1 - 2I')^{3/2} dI'
double transformed_kernel(double intensity, const numerics::QuadratureSpec& spec) {
  const auto g = [intensity](double x) {
    return x * numerics::bessel_i0(2.0 * std::sqrt(intensity * std::max(x, 0.0)));
  };
  // d/dx [x I0(2 sqrt(I x))] = I0(y) + sqrt(I x) I1(y), y = 2 sqrt(I x)
  const double y = 2.0 * std::sqrt(intensity * kSingularPoint);
  const double g_prime = numerics::bessel_i0(y) + 0.5 * y * numerics::bessel_i1(y);
  return numerics::finite_part_integral(g, kSingularPoint, 1.5, spec, g_prime);
}

}  // namespace

double p_normalization_constant(const numerics::QuadratureSpec& spec) {
  // integral Q dI = c0 f.p. integral I' e^{I'} / (1 - 2I')^{3/2} dI'
  const auto g = [](double x) { return x * std::exp(x); };
  const double g_prime = (1.0 + kSingularPoint) * std::exp(kSingularPoint);
  const double total = numerics::finite_part_integral(g, kSingularPoint, 1.5, spec, g_prime);
  if (!std::isfinite(total) || std::abs(total) < 1e-300) {
    throw NormalizationFailed("finite-part normalization integral is " + num(total));
  }
  return 1.0 / total;
}

PToQResult p_to_q_transform(C0Mode mode, double c0_given, std::span<const double> grid,
                            const numerics::QuadratureSpec& spec) {
  PToQResult out;
  out.c0 = mode == C0Mode::kNormalize ? p_normalization_constant(spec) : c0_given;
  out.q.reserve(grid.size());
  for (double i : grid) {
    if (!(i >= 0.0)) throw DomainError("P to Q transform needs I >= 0");
    out.q.push_back(out.c0 == 0.0 ? 0.0 : out.c0 * std::exp(-i) * transformed_kernel(i, spec));
  }
  return out;
}

}  // namespace sel::quasiprob
