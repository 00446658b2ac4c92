#include "sel/numerics/special_functions.hpp"

#include <cmath>
#include <string>

#include "sel/error.hpp"

namespace sel::numerics {

double erf(double x) { return std::erf(x); }

double bessel_i0(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i0 needs x >= 0, got " + num(x));
  return std::cyl_bessel_i(0.0, x);
}

double bessel_i1(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i1 needs x >= 0, got " + num(x));
  return std::cyl_bessel_i(1.0, x);
}

double stable_cosh_sinh_combo(double intensity) {
  if (!(intensity >= 0.0)) {
    throw DomainError("stable_cosh_sinh_combo needs I >= 0, got " + num(intensity));
  }
  const double x = std::sqrt(2.0 * intensity);
  // cosh x = e^x (1 + e^{-2x}) / 2,  sinh x / x = e^x (1 - e^{-2x}) / (2x)
  const double e2 = std::exp(-2.0 * x);
  const double cosh_part = 0.5 * (1.0 + e2);
  const double sinhc_part = x == 0.0 ? 1.0 : -std::expm1(-2.0 * x) / (2.0 * x);
  return std::exp(x - intensity) * (cosh_part + sinhc_part);
}

}  // namespace sel::numerics
