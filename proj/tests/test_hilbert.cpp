#include <doctest.h>

#include <cmath>

#include "sel/error.hpp"
#include "sel/hilbert.hpp"

using namespace sel;
using namespace sel::hilbert;
using numerics::Complex;
using numerics::ComplexMatrix;

TEST_SUITE("hilbert") {
  TEST_CASE("truncation layout") {
    const FockTruncation t(3);
    CHECK(t.dimension() == 8);
    CHECK(t.index(1, 0) == 0);
    CHECK(t.index(2, 0) == 4);
    CHECK(t.index(2, 3) == 7);
    CHECK(t.atom_of(5) == 2);
    CHECK(t.photons_of(5) == 1);
    CHECK(t.excitations_of(t.index(2, 2)) == 3);
    CHECK_THROWS_AS(FockTruncation(0), DomainError);
  }

  TEST_CASE("n_max = 1 annihilation operator") {
    const auto ops = build_operators(FockTruncation(1));
    const auto& t = ops.truncation;
    for (int atom : {1, 2}) {
      CHECK(ops.a(t.index(atom, 0), t.index(atom, 0)) == Complex(0.0));
      CHECK(ops.a(t.index(atom, 0), t.index(atom, 1)) == Complex(1.0));
      CHECK(ops.a(t.index(atom, 1), t.index(atom, 0)) == Complex(0.0));
      CHECK(ops.a(t.index(atom, 1), t.index(atom, 1)) == Complex(0.0));
    }
    CHECK(ops.a(t.index(1, 0), t.index(2, 1)) == Complex(0.0));
  }

  TEST_CASE("ladder, atom and number operators") {
    const int n_max = 6;
    const auto ops = build_operators(FockTruncation(n_max));
    const auto& t = ops.truncation;
    for (int atom : {1, 2}) {
      for (int n = 0; n <= n_max; ++n) {
        CHECK(ops.n_op(t.index(atom, n), t.index(atom, n)) == Complex(n));
        if (n > 0) CHECK(ops.a(t.index(atom, n - 1), t.index(atom, n)) == Complex(std::sqrt(double(n))));
      }
    }
    for (int n = 0; n <= n_max; ++n) {
      CHECK(ops.sigma(t.index(1, n), t.index(2, n)) == Complex(1.0));
      CHECK(ops.sigma_z(t.index(2, n), t.index(2, n)) == Complex(1.0));
      CHECK(ops.sigma_z(t.index(1, n), t.index(1, n)) == Complex(-1.0));
    }
    CHECK(ops.a_dag == ops.a.adjoint());
    CHECK(ops.sigma_dag == ops.sigma.adjoint());
    CHECK((ops.n_op - ops.a_dag * ops.a).norm_inf() <= 1e-14);
    CHECK(ops.sigma_z == ops.sigma_dag * ops.sigma - ops.sigma * ops.sigma_dag);
    CHECK(numerics::hermiticity_defect(ops.n_op) == 0.0);
    CHECK(numerics::hermiticity_defect(ops.sigma_z) == 0.0);
    CHECK(commutator(ops.a, ops.sigma).norm_inf() == 0.0);
    CHECK(commutator(ops.a, ops.sigma_dag).norm_inf() == 0.0);
    CHECK(ops.identity == ComplexMatrix::identity(t.dimension()));
  }

  TEST_CASE("truncated commutator [a, a_dag]") {
    const int n_max = 5;
    const auto ops = build_operators(FockTruncation(n_max));
    const auto& t = ops.truncation;
    const auto c = commutator(ops.a, ops.a_dag);
    for (int atom : {1, 2}) {
      for (int n = 0; n < n_max; ++n) CHECK(std::abs(c(t.index(atom, n), t.index(atom, n)) - 1.0) <= 1e-14);
      CHECK(std::abs(c(t.index(atom, n_max), t.index(atom, n_max)) + double(n_max)) <= 1e-14);
    }
    auto off = c;
    for (std::size_t j = 0; j < t.dimension(); ++j) off(j, j) = 0.0;
    CHECK(off.norm_inf() == 0.0);
  }

  TEST_CASE("expectation values") {
    const FockTruncation t(4);
    const auto ops = build_operators(t);
    CHECK(expectation(basis_projector(t, 1, 0), ops.n_op) == Complex(0.0));
    CHECK(expectation(basis_projector(t, 2, 3), ops.n_op) == Complex(3.0));
    CHECK(expectation(basis_projector(t, 2, 0), ops.sigma_z) == Complex(1.0));
    CHECK_THROWS_AS(expectation(ComplexMatrix(3, 3), ops.n_op), DimensionMismatch);
  }
}
