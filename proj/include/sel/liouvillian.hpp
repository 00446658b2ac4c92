#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sel/hilbert.hpp"
#include "sel/numerics/complex_matrix.hpp"

namespace sel::lindblad {

using hilbert::FockTruncation;
using numerics::Complex;
using numerics::ComplexMatrix;
using numerics::ComplexVector;

/// Rates of the single-emitter laser. hbar = 1, so the coupling enters the
/// Hamiltonian as H = i g (a^dag sigma - sigma^dag a).
class LaserParams {
 public:
  /// Physical rates: pump Gamma, spontaneous decay gamma, cavity decay kappa,
  /// coupling g. DomainError unless all four are >= 0. With g = 0 the atom
  /// and field decouple and the dimensionless accessors are not finite.
  static LaserParams from_rates(double pump, double spontaneous, double cavity_decay,
                                double coupling);
  /// omega = Gamma/2g, eta = gamma/2g, tau = kappa/2g. Needs g > 0.
  static LaserParams from_dimensionless(double omega, double eta, double tau,
                                        double coupling = 1.0);

  double pump() const noexcept { return pump_; }
  double spontaneous() const noexcept { return spontaneous_; }
  double cavity_decay() const noexcept { return cavity_decay_; }
  double coupling() const noexcept { return coupling_; }

  double omega() const noexcept { return pump_ / (2.0 * coupling_); }
  double eta() const noexcept { return spontaneous_ / (2.0 * coupling_); }
  double tau() const noexcept { return cavity_decay_ / (2.0 * coupling_); }

 private:
  LaserParams(double pump, double spontaneous, double cavity_decay, double coupling);

  double pump_;
  double spontaneous_;
  double cavity_decay_;
  double coupling_;
};

/// Density matrix over the truncated atom (x) field basis.
class DensityMatrix {
 public:
  /// DimensionMismatch unless the matrix is square of the truncation's size.
  DensityMatrix(FockTruncation truncation, ComplexMatrix matrix);

  /// |atom, n><atom, n|
  static DensityMatrix basis_state(FockTruncation truncation, int atom, int n);

  const FockTruncation& truncation() const noexcept { return truncation_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  Complex trace() const { return matrix_.trace(); }
  double hermiticity_defect() const { return numerics::hermiticity_defect(matrix_); }

  /// p_n = <1,n|rho|1,n> + <2,n|rho|2,n>.
  std::vector<double> photon_distribution() const;

  /// Field density matrix after tracing out the atom.
  ComplexMatrix reduced_field() const;

  /// Largest |rho_jk| between basis states of different excitation number.
  double excitation_coherence() const;

  /// Smallest eigenvalue, from the 2x2 blocks of fixed excitation number.
  /// DomainError if the state has coherences between excitation sectors
  /// larger than 1e-10.
  double min_eigenvalue() const;

  /// Column-stacked vectorization: element (j, k) at j + k * dim.
  ComplexVector vectorize() const;
  static DensityMatrix unvectorize(FockTruncation truncation, std::span<const Complex> v);

 private:
  FockTruncation truncation_;
  ComplexMatrix matrix_;
};

/// Sparse (compressed-column) Lindblad generator acting on column-stacked
/// density matrices.
class Superoperator {
 public:
  const FockTruncation& truncation() const noexcept { return truncation_; }
  /// d^2 where d is the Hilbert-space dimension.
  std::size_t size() const noexcept { return col_ptr_.size() - 1; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  ComplexVector apply(std::span<const Complex> x) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

  ComplexMatrix dense() const;
  double norm_inf() const;

  /// max_k |sum_j L[(j,j), k]|, zero for a trace-preserving generator.
  double left_trace_defect() const;

  /// Vec indices (j + k d) with equal excitation number on both sides, in
  /// increasing order. The generator maps this subspace into itself.
  std::vector<std::size_t> excitation_sector() const;

  /// Dense restriction of the generator to the given vec indices.
  ComplexMatrix restrict_to(std::span<const std::size_t> indices) const;

  template <class Visitor>
  void for_each_in_column(std::size_t col, Visitor&& visit) const {
    for (std::size_t p = col_ptr_[col]; p < col_ptr_[col + 1]; ++p) visit(row_idx_[p], values_[p]);
  }

 private:
  friend Superoperator build_liouvillian(const LaserParams&, FockTruncation);
  explicit Superoperator(FockTruncation truncation) : truncation_(truncation) {}

  FockTruncation truncation_;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::size_t> row_idx_;
  std::vector<Complex> values_;
};

Superoperator build_liouvillian(const LaserParams& params, FockTruncation truncation);

inline constexpr double kDefaultTailTolerance = 1e-10;
inline constexpr int kDefaultInitialNmax = 40;

struct SteadyStateOptions {
  int n_max_initial = kDefaultInitialNmax;
  /// p_{n_max} + p_{n_max - 1} must stay below this.
  double tail_tol = kDefaultTailTolerance;
  /// Doubling stops here; TruncationTooSmall beyond it.
  int n_max_cap = 320;
};

/// Stationary state of L: the restriction to the excitation sector with the
/// row of the |1,0><1,0| element replaced by the trace functional.
/// Throws TruncationTooSmall when the photon tail exceeds tail_tol and
/// SingularMatrix when the stationary state is not unique.
DensityMatrix steady_state(const Superoperator& generator,
                           double tail_tol = kDefaultTailTolerance);

/// ||L vec(rho)||_inf
double stationary_residual(const Superoperator& generator, const DensityMatrix& rho);

struct SteadyStateResult {
  DensityMatrix rho;
  int n_max_used;
  double residual;
};

/// Builds and solves at n_max_initial, doubling the truncation until the tail
/// check passes.
SteadyStateResult solve_steady_state(const LaserParams& params,
                                     const SteadyStateOptions& options = {});

/// Smallest singular value of the trace-constrained stationary system, on the
/// excitation sector or (small truncations only) on the full space.
double trace_constrained_min_singular_value(const Superoperator& generator,
                                            bool full_space = false);

struct ObservableSet {
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  double mean_n3 = 0.0;
  std::optional<double> mandel_q;  // empty when <n> < 1e-12
  double sigma_z_mean = 0.0;
  Complex sigma_mean = 0.0;
  std::vector<double> photon_dist;
};

ObservableSet observables(const DensityMatrix& rho);

/// Classical RK4 on d vec(rho)/dt = L vec(rho). StepTooLarge unless
/// dt * ||L||_inf < 0.1.
DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& generator, double t_final,
                     double dt);

}  // namespace sel::lindblad
