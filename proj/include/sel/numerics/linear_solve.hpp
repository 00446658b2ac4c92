#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sel/numerics/complex_matrix.hpp"

namespace sel::numerics {

/// Relative pivot threshold: a pivot below this times ||A||_inf is singular.
inline constexpr double kSingularPivotRatio = 1e-14;

/// Gaussian elimination with partial pivoting, PA = LU stored in place.
class LuFactorization {
 public:
  /// Throws SingularMatrix when a pivot falls below kSingularPivotRatio * ||A||_inf,
  /// DimensionMismatch for non-square input.
  explicit LuFactorization(ComplexMatrix a);

  std::size_t size() const noexcept { return lu_.rows(); }

  ComplexVector solve(std::span<const Complex> b) const;
  /// Solves A^H x = b with the same factors.
  ComplexVector solve_adjoint(std::span<const Complex> b) const;

  /// Product of the pivots with the permutation sign.
  Complex determinant() const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;  // row i of PA is row perm_[i] of A
  int perm_sign_ = 1;
};

ComplexVector solve_linear(const ComplexMatrix& a, std::span<const Complex> b);

/// Estimate of the smallest singular value by inverse iteration on A^H A.
/// Returns 0 when A is singular to the pivot threshold.
double smallest_singular_value(const ComplexMatrix& a, int max_iterations = 200,
                               double rel_tol = 1e-10);

}  // namespace sel::numerics
