#include "sel/hilbert.hpp"

#include <cmath>
#include <string>

#include "sel/error.hpp"
#include "sel/numerics/kernels.hpp"

namespace sel::hilbert {

FockTruncation::FockTruncation(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1, got " + std::to_string(n_max));
}

OperatorSet build_operators(FockTruncation truncation) {
  const std::size_t dim = truncation.dimension();
  OperatorSet ops{truncation,
                  ComplexMatrix(dim, dim),
                  {},
                  ComplexMatrix(dim, dim),
                  {},
                  {},
                  {},
                  ComplexMatrix::identity(dim)};

  for (int atom = 1; atom <= 2; ++atom) {
    for (int n = 1; n <= truncation.n_max(); ++n) {
      ops.a(truncation.index(atom, n - 1), truncation.index(atom, n)) = std::sqrt(double(n));
    }
  }
  for (int n = 0; n <= truncation.n_max(); ++n) {
    ops.sigma(truncation.index(1, n), truncation.index(2, n)) = 1.0;
  }
  ops.a_dag = ops.a.adjoint();
  ops.sigma_dag = ops.sigma.adjoint();
  // a_dag * a up to the rounding of sqrt(n)^2, which would spoil integer diagonals
  ops.n_op = ComplexMatrix(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) ops.n_op(j, j) = truncation.photons_of(j);
  ops.sigma_z = ops.sigma_dag * ops.sigma - ops.sigma * ops.sigma_dag;
  return ops;
}

Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  if (rho.rows() != op.cols() || rho.cols() != op.rows() || !rho.square()) {
    throw DimensionMismatch("expectation: operator " + std::to_string(op.rows()) + "x" +
                            std::to_string(op.cols()) + " vs state " +
                            std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
  // trace(op rho) = sum_ij op_ij rho_ji; walk rho by transposed rows
  const ComplexMatrix rho_t = [&] {
    ComplexMatrix t(rho.cols(), rho.rows());
    for (std::size_t r = 0; r < rho.rows(); ++r)
      for (std::size_t c = 0; c < rho.cols(); ++c) t(c, r) = rho(r, c);
    return t;
  }();
  Complex total = 0.0;
  for (std::size_t i = 0; i < op.rows(); ++i) total += numerics::kernels::cdotu(op.row(i), rho_t.row(i));
  return total;
}

ComplexMatrix basis_projector(const FockTruncation& truncation, int atom, int n) {
  if (n < 0 || n > truncation.n_max() || (atom != 1 && atom != 2)) {
    throw DomainError("basis state out of range");
  }
  ComplexMatrix p(truncation.dimension(), truncation.dimension());
  const std::size_t i = truncation.index(atom, n);
  p(i, i) = 1.0;
  return p;
}

}  // namespace sel::hilbert
