#include "sel/numerics/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "sel/error.hpp"

namespace sel::numerics {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; Gauss
// 10-point weights for the odd-indexed abscissae.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod21(const RealFunction& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  const double value = kronrod * half;
  const double err = std::abs((kronrod - gauss) * half);
  if (!std::isfinite(value)) {
    throw DomainError("non-finite integrand on [" + num(a) + ", " + num(b) +
                      "]");
  }
  return {a, b, value, err};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) throw DomainError("abs_tol must lie in (0, 1)");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  if (max_subdivisions < 8) throw DomainError("max_subdivisions must be at least 8");
}

QuadratureResult integrate_interval(const RealFunction& f, double a, double b,
                                    const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return {};
  std::priority_queue<Panel> panels;
  panels.push(gauss_kronrod21(f, a, b));
  double total = panels.top().value;
  double total_error = panels.top().error;
  int subdivisions = 0;

  // Stop once the summed estimate clears tolerance; split the worst panel otherwise.
  // Summing panel errors is conservative; the final re-sum removes drift.
  while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdivisions >= spec.max_subdivisions) {
      throw NonConvergent("quadrature budget of " + std::to_string(spec.max_subdivisions) +
                          " subdivisions exhausted, error estimate " +
                          num(total_error));
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod21(f, worst.a, mid);
    const Panel right = gauss_kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
    if (mid <= worst.a || mid >= worst.b) {
      throw NonConvergent("panel width underflow near " + num(mid));
    }
  }

  QuadratureResult result;
  result.subdivisions = subdivisions;
  while (!panels.empty()) {
    result.value += panels.top().value;
    result.error_estimate += panels.top().error;
    panels.pop();
  }
  return result;
}

QuadratureResult integrate_semi_infinite_detailed(const RealFunction& f,
                                                  const QuadratureSpec& spec) {
  const RealFunction mapped = [&f](double t) {
    const double x = (1.0 - t) / t;
    const double fx = f(x);
    // The integrand must decay; once it is exactly zero the Jacobian is irrelevant.
    if (fx == 0.0) return 0.0;
    return fx / (t * t);
  };
  return integrate_interval(mapped, 0.0, 1.0, spec);
}

}  // namespace sel::numerics
