#pragma once

#include <cstddef>

#include "sel/numerics/complex_matrix.hpp"

namespace sel::hilbert {

using numerics::Complex;
using numerics::ComplexMatrix;

/// Highest retained Fock state. The composite atom (x) field space has
/// dimension 2 (n_max + 1).
class FockTruncation {
 public:
  /// Throws DomainError for n_max < 1.
  explicit FockTruncation(int n_max);

  int n_max() const noexcept { return n_max_; }
  std::size_t field_dimension() const noexcept { return static_cast<std::size_t>(n_max_) + 1; }
  std::size_t dimension() const noexcept { return 2 * field_dimension(); }

  /// Basis index of |atom, n> with atom in {1, 2}: atom slow, Fock fast.
  /// |1> is the lower level, |2> the upper.
  std::size_t index(int atom, int n) const noexcept {
    return static_cast<std::size_t>(atom - 1) * field_dimension() + static_cast<std::size_t>(n);
  }
  int atom_of(std::size_t index) const noexcept {
    return index < field_dimension() ? 1 : 2;
  }
  int photons_of(std::size_t index) const noexcept {
    return static_cast<int>(index % field_dimension());
  }
  /// Photon number plus one if the atom is excited; conserved by the
  /// resonant coupling.
  int excitations_of(std::size_t index) const noexcept {
    return photons_of(index) + (atom_of(index) == 2 ? 1 : 0);
  }

  friend bool operator==(const FockTruncation&, const FockTruncation&) = default;

 private:
  int n_max_;
};

struct OperatorSet {
  FockTruncation truncation;
  ComplexMatrix a;
  ComplexMatrix a_dag;
  ComplexMatrix sigma;  // |1><2|, lowers the atom
  ComplexMatrix sigma_dag;
  ComplexMatrix sigma_z;  // sigma_dag sigma - sigma sigma_dag
  ComplexMatrix n_op;
  ComplexMatrix identity;
};

OperatorSet build_operators(FockTruncation truncation);

/// trace(op * rho). DimensionMismatch if the shapes differ.
Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

/// Pure-state projector |atom, n><atom, n|.
ComplexMatrix basis_projector(const FockTruncation& truncation, int atom, int n);

}  // namespace sel::hilbert
