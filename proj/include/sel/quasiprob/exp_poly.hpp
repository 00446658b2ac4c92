#pragma once

#include <span>
#include <vector>

namespace sel::quasiprob {

/// f(I) = sum_k c_k I^{k/2} e^{-I} with integer half-exponents k >= -1, so
/// every term is integrable on [0, inf). Exact under differentiation (while
/// exponents stay >= -1), under multiplication by powers of I^{1/2}, and its
/// moments have closed forms through the Gamma function.
class ExpPoly {
 public:
  struct Term {
    double coeff;
    int half_exponent;
  };

  ExpPoly() = default;
  /// Merges duplicate exponents and drops exact zeros. DomainError for k < -1.
  explicit ExpPoly(std::vector<Term> terms);

  static ExpPoly monomial(double coeff, int half_exponent);

  std::span<const Term> terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// Value at I >= 0 (DomainError for I < 0). A k = -1 term makes I = 0
  /// infinite.
  double operator()(double intensity) const;

  /// d/dI [c I^{k/2} e^{-I}] = c (k/2) I^{k/2-1} e^{-I} - c I^{k/2} e^{-I}.
  /// DomainError when a k = -1 term would produce I^{-3/2}.
  ExpPoly derivative() const;
  ExpPoly derivative(int order) const;

  /// Multiply by I^{half_shift/2}.
  ExpPoly times_power(int half_shift) const;

  /// integral_0^inf f(I) I^m dI = sum_k c_k Gamma(k/2 + m + 1).
  double moment(double m) const;

  ExpPoly& operator+=(const ExpPoly& rhs);
  ExpPoly& operator-=(const ExpPoly& rhs);
  ExpPoly& operator*=(double s);

  double max_abs_on(std::span<const double> grid) const;

 private:
  std::vector<Term> terms_;  // strictly increasing half_exponent
};

ExpPoly operator+(ExpPoly lhs, const ExpPoly& rhs);
ExpPoly operator-(ExpPoly lhs, const ExpPoly& rhs);
ExpPoly operator*(ExpPoly lhs, double s);
ExpPoly operator*(double s, ExpPoly rhs);

}  // namespace sel::quasiprob
