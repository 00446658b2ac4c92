#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sel/numerics/quadrature.hpp"
#include "sel/quasiprob/exp_poly.hpp"
#include "sel/quasiprob/residuals.hpp"

namespace sel::quasiprob {

/// Closed-form radial function with analytic first and second derivatives.
/// When the function is an entire series times e^{-I}, a truncated ExpPoly
/// expansion is attached for higher derivatives.
struct AnalyticRadialFn {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;
  std::optional<ExpPoly> series;
};

/// 1 + sqrt(2 e pi) erf(2^{-1/2})
double q2_normalization();

/// Q1(I) = e^{-I}
AnalyticRadialFn vacuum_q();

/// Q2(I) = e^{-I} (cosh sqrt(2I) + sinh sqrt(2I) / sqrt(2I)) / q2_normalization()
AnalyticRadialFn limit2_q(int series_terms = 60);

struct LimitSolutions {
  AnalyticRadialFn q1;
  AnalyticRadialFn q2;
};

LimitSolutions limit_solutions();

/// P(I) = c0 I e^I / (1 - 2I)^{3/2} for I < 1/2; zero beyond (the real part
/// of the principal branch).
AnalyticRadialFn p_function(double c0);

/// Grid I in [0.05, 6] step 0.01 with [0.95, 1.05] removed.
std::vector<double> limit_ode_grid();

/// case 1:  Q' + Q
/// case 2:  2I(1-I) Q'' + (3 + 3I - 4I^2) Q' + (1 + 2I - 2I^2) Q
/// DomainError for any other case.
double limit_ode_value(int limit_case, const AnalyticRadialFn& f, double intensity);

struct LimitResidual {
  int limit_case;
  double max_abs;
  double at_intensity;
};

LimitResidual limit_ode_residual(int limit_case, const AnalyticRadialFn& f);

enum class C0Mode { kNormalize, kGiven };

struct PToQResult {
  std::vector<double> q;
  double c0;
};

/// Q(I) = finite part of integral_0^inf P(I') e^{-(I'+I)} I0(2 sqrt(I I')) dI'.
/// The exponentials are combined before integrating:
///   Q(I) = c0 e^{-I} f.p. integral I' I0(2 sqrt(I I')) / (1 - 2I')^{3/2} dI'.
/// kNormalize fixes c0 so that integral Q dI = 1, using
/// integral_0^inf e^{-I} I0(2 sqrt(I I')) dI = e^{I'}.
/// Errors: DomainError for negative grid values, NonConvergent,
/// NormalizationFailed.
PToQResult p_to_q_transform(C0Mode mode, double c0_given, std::span<const double> grid,
                            const numerics::QuadratureSpec& spec = {});

/// The c0 that normalizes the transformed Q.
double p_normalization_constant(const numerics::QuadratureSpec& spec = {});

}  // namespace sel::quasiprob
