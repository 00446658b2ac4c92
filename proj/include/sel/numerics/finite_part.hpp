#pragma once

#include <optional>

#include "sel/numerics/quadrature.hpp"

namespace sel::numerics {

/// Hadamard finite part of
///
///     integral_0^inf g(x) / (1 - x/s)^p dx,      1 < p < 2,
///
/// for g smooth at the singular point s > 0.
///
/// Branch convention: for x > s the factor (1 - x/s)^p is the principal
/// complex power of a negative base, so 1/(1 - x/s)^p is a pure phase times
/// a real magnitude with a non-zero imaginary part; its real part for p = 3/2
/// vanishes identically. Only the real part is returned, which means the
/// integral is supported on [0, s] and g is never evaluated beyond s. For
/// other p the region beyond s contributes cos(p*pi) times an ordinary
/// integral; that case is rejected to keep the contract narrow.
///
/// On [0, s] the value is computed as
///
///     s^p [ int_0^s (g(x) - g(s) + g'(s) u) u^{-p} dx
///           + g(s) s^{1-p}/(1-p) - g'(s) s^{2-p}/(2-p) ],     u = s - x,
///
/// with the remainder integrated after the substitution u = v^2.
/// If g'(s) is not supplied it is taken from a fourth-order central
/// difference, which needs g defined slightly beyond s.
///
/// Errors: SingularityOutOfDomain for s <= 0; DomainError for p other than
/// 3/2; NonConvergent from the quadrature.
double finite_part_integral(const RealFunction& g, double s, double power,
                            const QuadratureSpec& spec = {},
                            std::optional<double> g_prime_at_s = std::nullopt);

}  // namespace sel::numerics
