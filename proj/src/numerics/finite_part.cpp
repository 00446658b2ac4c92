#include "sel/numerics/finite_part.hpp"

#include <cmath>
#include <string>

#include "sel/error.hpp"

namespace sel::numerics {

namespace {

double central_derivative(const RealFunction& g, double s) {
  const double h = 1e-3 * std::max(1.0, std::abs(s));
  return (8.0 * (g(s + h) - g(s - h)) - (g(s + 2.0 * h) - g(s - 2.0 * h))) / (12.0 * h);
}

double central_second_derivative(const RealFunction& g, double s) {
  const double h = 1e-3 * std::max(1.0, std::abs(s));
  return (-(g(s + 2.0 * h) + g(s - 2.0 * h)) + 16.0 * (g(s + h) + g(s - h)) - 30.0 * g(s)) /
         (12.0 * h * h);
}

}  // namespace

double finite_part_integral(const RealFunction& g, double s, double power,
                            const QuadratureSpec& spec, std::optional<double> g_prime_at_s) {
  if (!(s > 0.0)) throw SingularityOutOfDomain("singular point must be > 0, got " + num(s));
  if (power != 1.5) throw DomainError("only the power 3/2 is supported");
  spec.validate();

  const double gs = g(s);
  const double gps = g_prime_at_s.value_or(central_derivative(g, s));

  // u = s - x = v^2, dx = 2v dv; remainder ~ g''(s) u^2 / 2 so the
  // transformed integrand 2 v^{1-2p} (...) vanishes like v^{5-2p}. Very close
  // to the singular point the Taylor gap is pure rounding noise, so the
  // leading term is used there instead.
  const double near_cutoff = 1e-6 * s;
  double gpps = 0.0;
  bool have_gpps = false;
  const RealFunction remainder = [&](double v) {
    const double u = v * v;
    if (u < near_cutoff) {
      if (!have_gpps) {
        gpps = central_second_derivative(g, s);
        have_gpps = true;
      }
      return gpps * std::pow(v, 5.0 - 2.0 * power);
    }
    const double taylor_gap = g(s - u) - gs + gps * u;
    return 2.0 * taylor_gap * std::pow(v, 1.0 - 2.0 * power);
  };
  const double regular = integrate_interval(remainder, 0.0, std::sqrt(s), spec).value;
  const double closed_form = gs * std::pow(s, 1.0 - power) / (1.0 - power) -
                             gps * std::pow(s, 2.0 - power) / (2.0 - power);
  return std::pow(s, power) * (regular + closed_form);
}

}  // namespace sel::numerics
