#include "sel/quasiprob/exp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sel/error.hpp"

namespace sel::quasiprob {

namespace {

std::vector<ExpPoly::Term> canonical(std::vector<ExpPoly::Term> terms) {
  for (const auto& t : terms) {
    if (t.half_exponent < -1) {
      throw DomainError("ExpPoly exponent I^(" + std::to_string(t.half_exponent) +
                        "/2) leaves the integrable family");
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.half_exponent < b.half_exponent; });
  std::vector<ExpPoly::Term> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().half_exponent == t.half_exponent) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const auto& t) { return t.coeff == 0.0; });
  return out;
}

}  // namespace

ExpPoly::ExpPoly(std::vector<Term> terms) : terms_(canonical(std::move(terms))) {}

ExpPoly ExpPoly::monomial(double coeff, int half_exponent) {
  return ExpPoly({{coeff, half_exponent}});
}

double ExpPoly::operator()(double intensity) const {
  if (!(intensity >= 0.0)) throw DomainError("ExpPoly evaluated at I < 0");
  if (intensity == 0.0) {
    double v = 0.0;
    for (const Term& t : terms_) {
      if (t.half_exponent == 0) v += t.coeff;
      if (t.half_exponent < 0) v += std::copysign(std::numeric_limits<double>::infinity(), t.coeff);
    }
    return v;
  }
  // each term as sign * exp(log|c| + (k/2) log I - I) so large exponents
  // with tiny coefficients neither overflow nor underflow prematurely
  const double log_i = std::log(intensity);
  double v = 0.0;
  for (const Term& t : terms_) {
    v += std::copysign(std::exp(std::log(std::abs(t.coeff)) + 0.5 * t.half_exponent * log_i -
                                intensity),
                       t.coeff);
  }
  return v;
}

ExpPoly ExpPoly::derivative() const {
  std::vector<Term> out;
  out.reserve(2 * terms_.size());
  for (const Term& t : terms_) {
    if (t.half_exponent != 0) {
      if (t.half_exponent == -1) {
        throw DomainError("derivative of I^(-1/2) e^(-I) leaves the integrable family");
      }
      out.push_back({0.5 * t.half_exponent * t.coeff, t.half_exponent - 2});
    }
    out.push_back({-t.coeff, t.half_exponent});
  }
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::derivative(int order) const {
  ExpPoly f = *this;
  for (int i = 0; i < order; ++i) f = f.derivative();
  return f;
}

ExpPoly ExpPoly::times_power(int half_shift) const {
  std::vector<Term> out(terms_.begin(), terms_.end());
  for (Term& t : out) t.half_exponent += half_shift;
  return ExpPoly(std::move(out));
}

double ExpPoly::moment(double m) const {
  double total = 0.0;
  for (const Term& t : terms_) {
    const double arg = 0.5 * t.half_exponent + m + 1.0;
    if (!(arg > 0.0)) throw DomainError("moment integral diverges at I = 0");
    total += std::copysign(std::exp(std::log(std::abs(t.coeff)) + std::lgamma(arg)), t.coeff);
  }
  return total;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& rhs) {
  std::vector<Term> all(terms_.begin(), terms_.end());
  all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
  terms_ = canonical(std::move(all));
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& rhs) { return *this += rhs * -1.0; }

ExpPoly& ExpPoly::operator*=(double s) {
  for (Term& t : terms_) t.coeff *= s;
  std::erase_if(terms_, [](const Term& t) { return t.coeff == 0.0; });
  return *this;
}

double ExpPoly::max_abs_on(std::span<const double> grid) const {
  double m = 0.0;
  for (double x : grid) m = std::max(m, std::abs((*this)(x)));
  return m;
}

ExpPoly operator+(ExpPoly lhs, const ExpPoly& rhs) { return lhs += rhs; }
ExpPoly operator-(ExpPoly lhs, const ExpPoly& rhs) { return lhs -= rhs; }
ExpPoly operator*(ExpPoly lhs, double s) { return lhs *= s; }
ExpPoly operator*(double s, ExpPoly rhs) { return rhs *= s; }

}  // namespace sel::quasiprob
