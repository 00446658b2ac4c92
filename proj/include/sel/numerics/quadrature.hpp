#pragma once

#include <functional>

namespace sel::numerics {

using RealFunction = std::function<double(double)>;

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 500;

  /// Throws DomainError unless both tolerances lie in (0, 1) and
  /// max_subdivisions >= 8.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

/// Adaptive 21-point Gauss-Kronrod on [a, b]. Endpoints are never sampled,
/// so integrable endpoint singularities are fine. Throws NonConvergent when
/// the subdivision budget runs out before max(abs_tol, rel_tol*|I|) is met.
QuadratureResult integrate_interval(const RealFunction& f, double a, double b,
                                    const QuadratureSpec& spec = {});

/// Integral over [0, inf) through the map x = (1 - t)/t on (0, 1].
QuadratureResult integrate_semi_infinite_detailed(const RealFunction& f,
                                                  const QuadratureSpec& spec = {});

inline double integrate_semi_infinite(const RealFunction& f, const QuadratureSpec& spec = {}) {
  return integrate_semi_infinite_detailed(f, spec).value;
}

}  // namespace sel::numerics
