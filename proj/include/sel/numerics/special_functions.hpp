#pragma once

namespace sel::numerics {

double erf(double x);

/// Modified Bessel function of the first kind, order zero. DomainError for x < 0.
double bessel_i0(double x);

/// Order one. DomainError for x < 0.
double bessel_i1(double x);

/// e^{-I} (cosh sqrt(2I) + sinh(sqrt(2I)) / sqrt(2I)), evaluated as
/// e^{sqrt(2I) - I} times a bounded bracket so it never overflows.
/// Equals 2 at I = 0. DomainError for I < 0.
double stable_cosh_sinh_combo(double intensity);

}  // namespace sel::numerics
