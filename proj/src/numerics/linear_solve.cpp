#include "sel/numerics/linear_solve.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <utility>

#include "sel/error.hpp"
#include "sel/numerics/kernels.hpp"

namespace sel::numerics {

LuFactorization::LuFactorization(ComplexMatrix a) : lu_(std::move(a)) {
  if (!lu_.square()) throw DimensionMismatch("LU needs a square matrix");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  const double threshold = kSingularPivotRatio * lu_.norm_inf();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot_row = k;
    double pivot_mag = std::abs(lu_(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double mag = std::abs(lu_(r, k));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (!(pivot_mag > threshold) || pivot_mag == 0.0) {
      throw SingularMatrix("pivot " + num(pivot_mag) + " at column " +
                           std::to_string(k) + " below threshold " + num(threshold));
    }
    if (pivot_row != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(pivot_row).begin());
      std::swap(perm_[k], perm_[pivot_row]);
      perm_sign_ = -perm_sign_;
    }

    const Complex inv_pivot = 1.0 / lu_(k, k);
    const auto pivot_tail = lu_.row(k).subspan(k + 1);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex factor = lu_(r, k) * inv_pivot;
      lu_(r, k) = factor;
      if (factor == Complex(0.0)) continue;
      kernels::caxpy(-factor, pivot_tail, lu_.row(r).subspan(k + 1));
    }
  }
}

ComplexVector LuFactorization::solve(std::span<const Complex> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw DimensionMismatch("right-hand side length mismatch");
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  // forward: unit lower
  for (std::size_t i = 0; i < n; ++i) {
    x[i] -= kernels::cdotu(lu_.row(i).first(i), std::span<const Complex>(x).first(i));
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto tail = lu_.row(i).subspan(i + 1);
    x[i] = (x[i] - kernels::cdotu(tail, std::span<const Complex>(x).subspan(i + 1))) / lu_(i, i);
  }
  return x;
}

ComplexVector LuFactorization::solve_adjoint(std::span<const Complex> b) const {
  // A^H = U^H L^H P, so solve U^H z = b, L^H w = z, x = P^T w.
  const std::size_t n = size();
  if (b.size() != n) throw DimensionMismatch("right-hand side length mismatch");
  ComplexVector w(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    w[i] /= std::conj(lu_(i, i));
    const Complex wi = w[i];
    for (std::size_t j = i + 1; j < n; ++j) w[j] -= std::conj(lu_(i, j)) * wi;
  }
  for (std::size_t i = n; i-- > 0;) {
    const Complex wi = w[i];
    for (std::size_t j = 0; j < i; ++j) w[j] -= std::conj(lu_(i, j)) * wi;
  }
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = w[i];
  return x;
}

Complex LuFactorization::determinant() const {
  Complex det = static_cast<double>(perm_sign_);
  for (std::size_t i = 0; i < size(); ++i) det *= lu_(i, i);
  return det;
}

ComplexVector solve_linear(const ComplexMatrix& a, std::span<const Complex> b) {
  if (!a.square()) throw DimensionMismatch("solve_linear needs a square matrix");
  if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length mismatch");
  return LuFactorization(a).solve(b);
}

double smallest_singular_value(const ComplexMatrix& a, int max_iterations, double rel_tol) {
  std::optional<LuFactorization> factors;
  try {
    factors.emplace(a);
  } catch (const SingularMatrix&) {
    return 0.0;
  }
  const LuFactorization& lu = *factors;
  const std::size_t n = lu.size();
  // deterministic start with no special alignment to any basis vector
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = Complex(1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i)),
                   0.21 * std::cos(0.7 * static_cast<double>(i)));
  }
  auto normalize = [](ComplexVector& x) {
    double s = 0.0;
    for (const Complex& c : x) s += std::norm(c);
    const double nrm = std::sqrt(s);
    for (Complex& c : x) c /= nrm;
    return nrm;
  };
  normalize(v);
  double estimate = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    ComplexVector w = lu.solve_adjoint(lu.solve(v));
    const double growth = normalize(w);  // ~ 1/sigma_min^2
    const double next = 1.0 / std::sqrt(growth);
    v = std::move(w);
    if (it > 0 && std::abs(next - estimate) <= rel_tol * next) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace sel::numerics
