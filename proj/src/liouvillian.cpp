#include "sel/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "sel/error.hpp"
#include "sel/moments.hpp"
#include "sel/numerics/kernels.hpp"
#include "sel/numerics/linear_solve.hpp"

namespace sel::lindblad {

namespace {

struct Entry {
  std::size_t index;
  Complex value;
};

// Nonzeros of a dense operator, by column (X|j> = sum_p X_pj |p>) and by row
// (<k|X = sum_q X_kq <q|).
struct SparseOperator {
  std::vector<std::vector<Entry>> by_col;
  std::vector<std::vector<Entry>> by_row;

  explicit SparseOperator(const ComplexMatrix& m) : by_col(m.cols()), by_row(m.rows()) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m(r, c) != Complex(0.0)) {
          by_col[c].push_back({r, m(r, c)});
          by_row[r].push_back({c, m(r, c)});
        }
      }
    }
  }
};

struct Collapse {
  SparseOperator op;
  double rate;
};

}  // namespace

// ---------------------------------------------------------------- LaserParams

LaserParams::LaserParams(double pump, double spontaneous, double cavity_decay, double coupling)
    : pump_(pump), spontaneous_(spontaneous), cavity_decay_(cavity_decay), coupling_(coupling) {
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) throw DomainError("coupling g must be >= 0");
  for (double r : {pump, spontaneous, cavity_decay}) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("rates must be finite and >= 0");
  }
}

LaserParams LaserParams::from_rates(double pump, double spontaneous, double cavity_decay,
                                    double coupling) {
  return {pump, spontaneous, cavity_decay, coupling};
}

LaserParams LaserParams::from_dimensionless(double omega, double eta, double tau,
                                            double coupling) {
  if (!(coupling > 0.0)) throw DomainError("dimensionless rates need coupling g > 0");
  return {2.0 * coupling * omega, 2.0 * coupling * eta, 2.0 * coupling * tau, coupling};
}

// -------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(FockTruncation truncation, ComplexMatrix matrix)
    : truncation_(truncation), matrix_(std::move(matrix)) {
  if (!matrix_.square() || matrix_.rows() != truncation_.dimension()) {
    throw DimensionMismatch("density matrix does not match the truncation");
  }
}

DensityMatrix DensityMatrix::basis_state(FockTruncation truncation, int atom, int n) {
  return {truncation, hilbert::basis_projector(truncation, atom, n)};
}

std::vector<double> DensityMatrix::photon_distribution() const {
  std::vector<double> p(truncation_.field_dimension());
  for (int n = 0; n <= truncation_.n_max(); ++n) {
    p[n] = matrix_(truncation_.index(1, n), truncation_.index(1, n)).real() +
           matrix_(truncation_.index(2, n), truncation_.index(2, n)).real();
  }
  return p;
}

ComplexMatrix DensityMatrix::reduced_field() const {
  const std::size_t f = truncation_.field_dimension();
  ComplexMatrix out(f, f);
  for (std::size_t n = 0; n < f; ++n)
    for (std::size_t m = 0; m < f; ++m) out(n, m) = matrix_(n, m) + matrix_(f + n, f + m);
  return out;
}

double DensityMatrix::excitation_coherence() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < matrix_.rows(); ++j)
    for (std::size_t k = 0; k < matrix_.cols(); ++k)
      if (truncation_.excitations_of(j) != truncation_.excitations_of(k))
        worst = std::max(worst, std::abs(matrix_(j, k)));
  return worst;
}

double DensityMatrix::min_eigenvalue() const {
  if (excitation_coherence() > 1e-10) {
    throw DomainError("state mixes excitation sectors; block eigenvalues do not apply");
  }
  double lowest = std::numeric_limits<double>::infinity();
  // sector m holds |1,m> (m <= n_max) and |2,m-1> (m >= 1)
  for (int m = 0; m <= truncation_.n_max() + 1; ++m) {
    const bool has_lower = m <= truncation_.n_max();
    const bool has_upper = m >= 1;
    if (has_lower && has_upper) {
      const std::size_t i = truncation_.index(1, m);
      const std::size_t j = truncation_.index(2, m - 1);
      const double a = matrix_(i, i).real();
      const double d = matrix_(j, j).real();
      const double off = std::abs(matrix_(i, j));
      const double mean = 0.5 * (a + d);
      const double radius = std::hypot(0.5 * (a - d), off);
      lowest = std::min(lowest, mean - radius);
    } else if (has_lower) {
      const std::size_t i = truncation_.index(1, m);
      lowest = std::min(lowest, matrix_(i, i).real());
    } else {
      const std::size_t j = truncation_.index(2, m - 1);
      lowest = std::min(lowest, matrix_(j, j).real());
    }
  }
  return lowest;
}

ComplexVector DensityMatrix::vectorize() const {
  const std::size_t d = matrix_.rows();
  ComplexVector v(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) v[j + k * d] = matrix_(j, k);
  return v;
}

DensityMatrix DensityMatrix::unvectorize(FockTruncation truncation, std::span<const Complex> v) {
  const std::size_t d = truncation.dimension();
  if (v.size() != d * d) throw DimensionMismatch("vectorized state has the wrong length");
  ComplexMatrix m(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) m(j, k) = v[j + k * d];
  return {truncation, std::move(m)};
}

// -------------------------------------------------------------- Superoperator

ComplexVector Superoperator::apply(std::span<const Complex> x) const {
  if (x.size() != size()) throw DimensionMismatch("superoperator applied to wrong length");
  ComplexVector y(size());
  for (std::size_t c = 0; c < size(); ++c) {
    const Complex xc = x[c];
    if (xc == Complex(0.0)) continue;
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) y[row_idx_[p]] += values_[p] * xc;
  }
  return y;
}

DensityMatrix Superoperator::apply(const DensityMatrix& rho) const {
  if (!(rho.truncation() == truncation_)) throw DimensionMismatch("truncations differ");
  return DensityMatrix::unvectorize(truncation_, apply(rho.vectorize()));
}

ComplexMatrix Superoperator::dense() const {
  ComplexMatrix m(size(), size());
  for (std::size_t c = 0; c < size(); ++c)
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) m(row_idx_[p], c) = values_[p];
  return m;
}

double Superoperator::norm_inf() const {
  std::vector<double> row_sums(size(), 0.0);
  for (std::size_t c = 0; c < size(); ++c)
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p)
      row_sums[row_idx_[p]] += std::abs(values_[p]);
  return row_sums.empty() ? 0.0 : *std::max_element(row_sums.begin(), row_sums.end());
}

double Superoperator::left_trace_defect() const {
  const std::size_t d = truncation_.dimension();
  double worst = 0.0;
  for (std::size_t c = 0; c < size(); ++c) {
    Complex sum = 0.0;
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p)
      if (row_idx_[p] % (d + 1) == 0) sum += values_[p];  // (j, j) sits at j (d + 1)
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

std::vector<std::size_t> Superoperator::excitation_sector() const {
  const std::size_t d = truncation_.dimension();
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j)
      if (truncation_.excitations_of(j) == truncation_.excitations_of(k)) out.push_back(j + k * d);
  return out;
}

ComplexMatrix Superoperator::restrict_to(std::span<const std::size_t> indices) const {
  std::vector<std::ptrdiff_t> position(size(), -1);
  for (std::size_t i = 0; i < indices.size(); ++i) position[indices[i]] = std::ptrdiff_t(i);
  ComplexMatrix block(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const std::size_t c = indices[i];
    for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) {
      const std::ptrdiff_t r = position[row_idx_[p]];
      if (r < 0) throw DomainError("generator leaks out of the requested subspace");
      block(std::size_t(r), i) = values_[p];
    }
  }
  return block;
}

Superoperator build_liouvillian(const LaserParams& params, FockTruncation truncation) {
  const hilbert::OperatorSet ops = hilbert::build_operators(truncation);
  const std::size_t d = truncation.dimension();
  const double g = params.coupling();

  // H = i g (a^dag sigma - sigma^dag a)
  const ComplexMatrix hamiltonian =
      Complex(0.0, g) * (ops.a_dag * ops.sigma - ops.sigma_dag * ops.a);

  std::vector<Collapse> collapses;
  collapses.push_back({SparseOperator(ops.a), params.cavity_decay()});
  collapses.push_back({SparseOperator(ops.sigma), params.spontaneous()});
  collapses.push_back({SparseOperator(ops.sigma_dag), params.pump()});

  // L(E) = K E + E K^dag + sum_c rate c E c^dag,  K = -i H - sum_c rate/2 c^dag c
  ComplexMatrix k_eff = Complex(0.0, -1.0) * hamiltonian;
  {
    const ComplexMatrix* raw[] = {&ops.a, &ops.sigma, &ops.sigma_dag};
    for (std::size_t i = 0; i < collapses.size(); ++i) {
      if (collapses[i].rate == 0.0) continue;
      k_eff -= (0.5 * collapses[i].rate) * (raw[i]->adjoint() * *raw[i]);
    }
  }
  const SparseOperator k_sparse(k_eff);
  const SparseOperator k_dag_sparse(k_eff.adjoint());

  Superoperator out(truncation);
  out.col_ptr_.reserve(d * d + 1);
  out.col_ptr_.push_back(0);
  std::vector<Entry> column;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      column.clear();
      // K |j><k|
      for (const Entry& e : k_sparse.by_col[j]) column.push_back({e.index + k * d, e.value});
      // |j><k| K^dag
      for (const Entry& e : k_dag_sparse.by_row[k]) column.push_back({j + e.index * d, e.value});
      for (const Collapse& c : collapses) {
        if (c.rate == 0.0) continue;
        for (const Entry& left : c.op.by_col[j])
          for (const Entry& right : c.op.by_col[k])
            column.push_back({left.index + right.index * d,
                              c.rate * left.value * std::conj(right.value)});
      }
      std::sort(column.begin(), column.end(),
                [](const Entry& x, const Entry& y) { return x.index < y.index; });
      for (std::size_t p = 0; p < column.size();) {
        Complex sum = 0.0;
        const std::size_t row = column[p].index;
        for (; p < column.size() && column[p].index == row; ++p) sum += column[p].value;
        if (sum != Complex(0.0)) {
          out.row_idx_.push_back(row);
          out.values_.push_back(sum);
        }
      }
      out.col_ptr_.push_back(out.row_idx_.size());
    }
  }
  return out;
}

// --------------------------------------------------------------- steady state

namespace {

// Dense trace-constrained system and the position of the replaced row.
struct ConstrainedSystem {
  ComplexMatrix matrix;
  std::size_t replaced_row;
};

ConstrainedSystem constrained_system(const Superoperator& generator,
                                     std::span<const std::size_t> indices) {
  const std::size_t d = generator.truncation().dimension();
  ConstrainedSystem sys{generator.restrict_to(indices), 0};
  // row of the |1,0><1,0| element, vec index 0
  const auto it = std::find(indices.begin(), indices.end(), std::size_t{0});
  sys.replaced_row = std::size_t(it - indices.begin());
  for (std::size_t c = 0; c < indices.size(); ++c) {
    sys.matrix(sys.replaced_row, c) = (indices[c] % (d + 1) == 0) ? 1.0 : 0.0;
  }
  return sys;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

DensityMatrix steady_state(const Superoperator& generator, double tail_tol) {
  const FockTruncation& trunc = generator.truncation();
  const std::size_t d = trunc.dimension();
  const std::vector<std::size_t> sector = generator.excitation_sector();
  const ConstrainedSystem sys = constrained_system(generator, sector);

  ComplexVector rhs(sector.size());
  rhs[sys.replaced_row] = 1.0;
  const ComplexVector x = numerics::solve_linear(sys.matrix, rhs);

  ComplexMatrix rho(d, d);
  for (std::size_t i = 0; i < sector.size(); ++i) rho(sector[i] % d, sector[i] / d) = x[i];
  DensityMatrix state(trunc, std::move(rho));

  const std::vector<double> p = state.photon_distribution();
  const double tail = std::abs(p[trunc.n_max()]) + std::abs(p[trunc.n_max() - 1]);
  if (!(tail < tail_tol)) {
    throw TruncationTooSmall("photon tail " + num(tail) + " at n_max = " +
                             std::to_string(trunc.n_max()));
  }
  return state;
}

double stationary_residual(const Superoperator& generator, const DensityMatrix& rho) {
  return numerics::norm_inf(generator.apply(rho.vectorize()));
}

SteadyStateResult solve_steady_state(const LaserParams& params,
                                     const SteadyStateOptions& options) {
  int n_max = options.n_max_initial;
  for (;;) {
    const Superoperator generator = build_liouvillian(params, FockTruncation(n_max));
    try {
      DensityMatrix rho = steady_state(generator, options.tail_tol);
      const double residual = stationary_residual(generator, rho);
      return {std::move(rho), n_max, residual};
    } catch (const TruncationTooSmall&) {
      if (2 * n_max > options.n_max_cap) throw;
      n_max *= 2;
    }
  }
}

double trace_constrained_min_singular_value(const Superoperator& generator, bool full_space) {
  const std::vector<std::size_t> indices =
      full_space ? all_indices(generator.size()) : generator.excitation_sector();
  if (full_space && generator.size() > 4096) {
    throw DomainError("full-space singular value check is limited to small truncations");
  }
  return numerics::smallest_singular_value(constrained_system(generator, indices).matrix);
}

// ----------------------------------------------------------------- observables

ObservableSet observables(const DensityMatrix& rho) {
  const FockTruncation& trunc = rho.truncation();
  ObservableSet out;
  out.photon_dist = rho.photon_distribution();
  for (std::size_t n = 0; n < out.photon_dist.size(); ++n) {
    const double dn = static_cast<double>(n);
    out.mean_n += dn * out.photon_dist[n];
    out.mean_n2 += dn * dn * out.photon_dist[n];
    out.mean_n3 += dn * dn * dn * out.photon_dist[n];
  }
  out.mandel_q = moments::mandel_q(out.mean_n, out.mean_n2);
  for (int n = 0; n <= trunc.n_max(); ++n) {
    out.sigma_z_mean += rho.matrix()(trunc.index(2, n), trunc.index(2, n)).real() -
                        rho.matrix()(trunc.index(1, n), trunc.index(1, n)).real();
    // <sigma> = trace(sigma rho) = sum_n <2,n|rho|1,n>
    out.sigma_mean += rho.matrix()(trunc.index(2, n), trunc.index(1, n));
  }
  return out;
}

// ------------------------------------------------------------------- evolution

DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& generator, double t_final,
                     double dt) {
  if (!(rho0.truncation() == generator.truncation())) throw DimensionMismatch("truncations differ");
  if (!(dt > 0.0) || !(t_final >= 0.0)) throw DomainError("need dt > 0 and t_final >= 0");
  const double stiffness = dt * generator.norm_inf();
  if (!(stiffness < 0.1)) {
    throw StepTooLarge("dt * ||L||_inf = " + num(stiffness) + " must be < 0.1");
  }

  ComplexVector y = rho0.vectorize();
  const std::size_t n = y.size();
  ComplexVector tmp(n);
  auto axpy_into = [&](const ComplexVector& base, double h, const ComplexVector& k) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = base[i] + h * k[i];
    return tmp;
  };

  const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const double h = steps > 0 ? t_final / double(steps) : 0.0;
  for (long step = 0; step < steps; ++step) {
    const ComplexVector k1 = generator.apply(y);
    const ComplexVector k2 = generator.apply(axpy_into(y, 0.5 * h, k1));
    const ComplexVector k3 = generator.apply(axpy_into(y, 0.5 * h, k2));
    const ComplexVector k4 = generator.apply(axpy_into(y, h, k3));
    for (std::size_t i = 0; i < n; ++i) y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return DensityMatrix::unvectorize(rho0.truncation(), y);
}

}  // namespace sel::lindblad
