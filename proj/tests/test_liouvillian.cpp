#include <doctest.h>

#include <cmath>
#include <random>

#include "sel/error.hpp"
#include "sel/liouvillian.hpp"
#include "sel/moments.hpp"

using namespace sel;
using namespace sel::lindblad;
using hilbert::FockTruncation;

namespace {

ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix h(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    h(j, j) = normal(rng);
    for (std::size_t k = j + 1; k < d; ++k) {
      h(j, k) = {normal(rng), normal(rng)};
      h(k, j) = std::conj(h(j, k));
    }
  }
  return h;
}

// Right side of the master equation built from operator products.
ComplexMatrix master_rhs(const LaserParams& p, const hilbert::OperatorSet& ops, const ComplexMatrix& rho) {
  const Complex i(0.0, 1.0);
  const ComplexMatrix h = i * p.coupling() * (ops.a_dag * ops.sigma - ops.sigma_dag * ops.a);
  ComplexMatrix out = -i * commutator(h, rho);
  auto dissipator = [&](double rate, const ComplexMatrix& c) {
    const ComplexMatrix cd = c.adjoint();
    const ComplexMatrix cdc = cd * c;
    out += (rate / 2.0) * (2.0 * (c * rho * cd) - cdc * rho - rho * cdc);
  };
  dissipator(p.cavity_decay(), ops.a);
  dissipator(p.spontaneous(), ops.sigma);
  dissipator(p.pump(), ops.sigma_dag);
  return out;
}

ComplexMatrix coherent_field_state(FockTruncation t, double alpha) {
  const std::size_t d = t.dimension();
  std::vector<double> amp(t.field_dimension());
  for (int n = 0; n <= t.n_max(); ++n) amp[n] = std::exp(-alpha * alpha / 2.0 + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0));
  ComplexMatrix rho(d, d);
  for (int n = 0; n <= t.n_max(); ++n)
    for (int m = 0; m <= t.n_max(); ++m) rho(t.index(1, n), t.index(1, m)) = amp[n] * amp[m];
  return rho;
}

// Trace norm of a Hermitian matrix that is block diagonal in the excitation
// number: the blocks are {|1,n>, |2,n-1>}.
double trace_norm_sector_diagonal(const ComplexMatrix& m, FockTruncation t) {
  double sum = std::abs(m(t.index(1, 0), t.index(1, 0)).real());
  for (int n = 1; n <= t.n_max(); ++n) {
    const std::size_t x = t.index(1, n);
    const std::size_t y = t.index(2, n - 1);
    const double a = m(x, x).real();
    const double b = m(y, y).real();
    const double c = std::abs(m(x, y));
    const double root = std::sqrt(0.25 * (a - b) * (a - b) + c * c);
    sum += std::abs(0.5 * (a + b) + root) + std::abs(0.5 * (a + b) - root);
  }
  sum += std::abs(m(t.index(2, t.n_max()), t.index(2, t.n_max())).real());
  return sum;
}

double photons(const DensityMatrix& rho) { return observables(rho).mean_n; }

}  // namespace

TEST_SUITE("liouvillian") {
  TEST_CASE("params") {
    const auto p = LaserParams::from_dimensionless(0.3, 0.5, 0.7, 2.0);
    CHECK(p.pump() == doctest::Approx(1.2));
    CHECK(p.omega() == doctest::Approx(0.3));
    CHECK(p.eta() == doctest::Approx(0.5));
    CHECK(p.tau() == doctest::Approx(0.7));
    CHECK_THROWS_AS(LaserParams::from_rates(-1.0, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(LaserParams::from_rates(1.0, 0.0, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(LaserParams::from_dimensionless(0.1, 0.1, 0.1, 0.0), DomainError);
    CHECK_NOTHROW(LaserParams::from_rates(0.0, 0.3, 1.0, 0.0));
  }

  TEST_CASE("generator matches the operator form of the master equation") {
    std::mt19937_64 rng(3);
    const FockTruncation t(5);
    const auto ops = hilbert::build_operators(t);
    for (const auto& p : {LaserParams::from_rates(0.7, 0.3, 0.4, 1.3), LaserParams::from_rates(0.0, 1.0, 2.0, 0.5),
                          LaserParams::from_rates(2.0, 0.0, 0.1, 1.0)}) {
      const auto L = build_liouvillian(p, t);
      CHECK(L.size() == t.dimension() * t.dimension());
      const ComplexMatrix rho = random_hermitian(t.dimension(), rng);
      ComplexMatrix diff = L.apply(DensityMatrix(t, rho)).matrix();
      diff -= master_rhs(p, ops, rho);
      CHECK(diff.norm_inf() <= 1e-13);
    }
  }

  TEST_CASE("vectorization is column stacked") {
    const FockTruncation t(2);
    ComplexMatrix m(t.dimension(), t.dimension());
    m(1, 4) = Complex(2.0, 3.0);
    const DensityMatrix rho(t, m);
    const auto v = rho.vectorize();
    CHECK(v[1 + 4 * t.dimension()] == Complex(2.0, 3.0));
    CHECK(DensityMatrix::unvectorize(t, v).matrix() == m);
    CHECK_THROWS_AS(DensityMatrix(t, ComplexMatrix(3, 3)), DimensionMismatch);
  }

  TEST_CASE("trace preservation, Hermiticity preservation, dense agreement") {
    std::mt19937_64 rng(5);
    const FockTruncation t(6);
    const auto L = build_liouvillian(LaserParams::from_dimensionless(0.8, 0.2, 0.6), t);
    CHECK(L.left_trace_defect() <= 1e-12);
    const auto dense = L.dense();
    const auto rho = DensityMatrix(t, random_hermitian(t.dimension(), rng));
    const auto out = L.apply(rho);
    CHECK(out.hermiticity_defect() <= 1e-12);
    CHECK(std::abs(out.trace()) <= 1e-12);
    const auto dv = numerics::multiply(dense, rho.vectorize());
    const auto sv = L.apply(rho.vectorize());
    double worst = 0.0;
    for (std::size_t i = 0; i < dv.size(); ++i) worst = std::max(worst, std::abs(dv[i] - sv[i]));
    CHECK(worst <= 1e-13);
  }

  TEST_CASE("vacuum-ground is dark without coupling and pump") {
    const FockTruncation t(4);
    const auto L = build_liouvillian(LaserParams::from_rates(0.0, 0.7, 1.1, 0.0), t);
    CHECK(L.apply(DensityMatrix::basis_state(t, 1, 0)).matrix().norm_inf() == 0.0);
  }

  TEST_CASE("cavity decay alone: d<n>/dt = -kappa <n> for Fock-diagonal states") {
    const FockTruncation t(8);
    const double kappa = 0.8;
    const auto L = build_liouvillian(LaserParams::from_rates(0.0, 0.0, kappa, 0.0), t);
    const auto ops = hilbert::build_operators(t);
    ComplexMatrix m(t.dimension(), t.dimension());
    const double weights[] = {0.1, 0.2, 0.3, 0.15, 0.25};
    for (int n = 0; n < 5; ++n) m(t.index(n % 2 + 1, n), t.index(n % 2 + 1, n)) = weights[n];
    const DensityMatrix rho(t, m);
    const double rate = hilbert::expectation(L.apply(rho).matrix(), ops.n_op).real();
    CHECK(rate == doctest::Approx(-kappa * photons(rho)).epsilon(1e-13));
  }

  TEST_CASE("sector structure") {
    const FockTruncation t(4);
    const auto L = build_liouvillian(LaserParams::from_dimensionless(0.5, 0.5, 0.5), t);
    const auto sector = L.excitation_sector();
    CHECK(sector.size() == 2 + 4 * static_cast<std::size_t>(t.n_max()));
    CHECK(sector.front() == 0);
    CHECK(L.restrict_to(sector).rows() == sector.size());
    const std::vector<std::size_t> leaky{0, 1};
    CHECK_THROWS_AS(L.restrict_to(leaky), DomainError);
  }

  TEST_CASE("zero pump relaxes to |1,0><1,0| exactly") {
    for (double tau : {0.3, 1.0}) {
      const auto r = solve_steady_state(LaserParams::from_dimensionless(0.0, 0.4, tau));
      ComplexMatrix diff = r.rho.matrix();
      diff -= hilbert::basis_projector(r.rho.truncation(), 1, 0);
      CHECK(diff.norm_inf() <= 1e-15);
    }
  }

  TEST_CASE("steady state at omega = tau = 0.3, eta = 0.5") {
    const auto params = LaserParams::from_dimensionless(0.3, 0.5, 0.3);
    const auto r = solve_steady_state(params);
    CHECK(r.n_max_used == 40);
    CHECK(r.residual <= 1e-9);
    CHECK(std::abs(r.rho.trace() - 1.0) <= 1e-12);
    CHECK(r.rho.hermiticity_defect() <= 1e-10);
    CHECK(r.rho.min_eigenvalue() >= -1e-8);
    CHECK(r.rho.excitation_coherence() <= 1e-10);

    const auto o = observables(r.rho);
    // Recorded from the first verified run; agrees with the moment system to 0.05 %.
    CHECK(o.mean_n == doctest::Approx(0.282233382).epsilon(1e-8));
    const auto m = moments::solve_moments(0.3, 0.5, 0.3);
    CHECK(std::abs(o.mean_n - m.mean_n) <= 0.02 * o.mean_n);

    double total = 0.0;
    double mean = 0.0;
    for (std::size_t n = 0; n < o.photon_dist.size(); ++n) {
      CHECK(o.photon_dist[n] >= -1e-10);
      total += o.photon_dist[n];
      mean += static_cast<double>(n) * o.photon_dist[n];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mean == doctest::Approx(o.mean_n).epsilon(1e-12));

    const auto field = r.rho.reduced_field();
    for (std::size_t n = 0; n < field.rows(); ++n)
      for (std::size_t k = 0; k < field.cols(); ++k)
        if (n != k) CHECK(std::abs(field(n, k)) <= 1e-10);
  }

  TEST_CASE("self-convergence under doubling the truncation") {
    for (double w : {0.1, 0.3, 0.6}) {
      const auto params = LaserParams::from_dimensionless(w, 0.5, w);
      const double n40 = photons(steady_state(build_liouvillian(params, FockTruncation(40)), 1.0));
      const double n80 = photons(steady_state(build_liouvillian(params, FockTruncation(80)), 1.0));
      CHECK(n40 > 0.0);
      CHECK(std::abs(n80 - n40) < 1e-8);
    }
  }

  TEST_CASE("adaptive truncation and its failure modes") {
    const auto params = LaserParams::from_dimensionless(3.0, 0.0, 0.05);
    CHECK_THROWS_AS(steady_state(build_liouvillian(params, FockTruncation(5))), TruncationTooSmall);
    SteadyStateOptions capped;
    capped.n_max_initial = 5;
    capped.n_max_cap = 10;
    CHECK_THROWS_AS(solve_steady_state(params, capped), TruncationTooSmall);
    SteadyStateOptions grow;
    grow.n_max_initial = 5;
    const auto r = solve_steady_state(params, grow);
    CHECK(r.n_max_used > 5);
    const auto p = observables(r.rho).photon_dist;
    CHECK(p[p.size() - 1] + p[p.size() - 2] < 1e-10);

    const auto closed = LaserParams::from_rates(0.0, 0.0, 0.0, 1.0);
    CHECK_THROWS_AS(steady_state(build_liouvillian(closed, FockTruncation(4))), SingularMatrix);
  }

  TEST_CASE("stationary state is unique") {
    for (const auto& p : {LaserParams::from_dimensionless(0.3, 0.5, 0.3), LaserParams::from_dimensionless(1.0, 0.1, 2.0),
                          LaserParams::from_dimensionless(0.05, 0.0, 0.05)}) {
      CHECK(trace_constrained_min_singular_value(build_liouvillian(p, FockTruncation(40))) > 1e-8);
      const auto small = build_liouvillian(p, FockTruncation(4));
      CHECK(trace_constrained_min_singular_value(small, true) > 1e-8);
    }
    const auto closed = build_liouvillian(LaserParams::from_rates(0.0, 0.0, 0.0, 1.0), FockTruncation(4));
    CHECK(trace_constrained_min_singular_value(closed) < 1e-8);
  }

  TEST_CASE("observables of reference states") {
    const FockTruncation t(40);
    const auto vac = observables(DensityMatrix::basis_state(t, 1, 0));
    CHECK(vac.mean_n == 0.0);
    CHECK_FALSE(vac.mandel_q.has_value());
    CHECK(vac.sigma_z_mean == -1.0);

    const auto fock = observables(DensityMatrix::basis_state(t, 2, 1));
    CHECK(fock.mean_n == 1.0);
    CHECK(fock.mean_n2 == 1.0);
    CHECK(*fock.mandel_q == -1.0);
    CHECK(fock.sigma_z_mean == 1.0);

    const auto coh = observables(DensityMatrix(t, coherent_field_state(t, 1.0)));
    CHECK(coh.mean_n == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(*coh.mandel_q) <= 1e-6);
  }

  TEST_CASE("evolve") {
    const FockTruncation t(10);
    const auto dark = build_liouvillian(LaserParams::from_rates(0.0, 0.5, 1.0, 0.0), t);
    const auto ground = DensityMatrix::basis_state(t, 1, 0);
    CHECK(evolve(ground, dark, 5.0, 0.05 / dark.norm_inf()).matrix() == ground.matrix());

    const double kappa = 1.0;
    const auto decay = build_liouvillian(LaserParams::from_rates(0.0, 0.0, kappa, 0.0), t);
    const double dt = 0.05 / decay.norm_inf();
    for (double time : {0.5, 1.0, 3.0}) {
      const auto rho = evolve(DensityMatrix::basis_state(t, 1, 1), decay, time, dt);
      CHECK(std::abs(photons(rho) - std::exp(-kappa * time)) <= 1e-6);
      CHECK(std::abs(rho.trace() - 1.0) <= 1e-8);
    }
    CHECK_THROWS_AS(evolve(ground, decay, 1.0, 1.0), StepTooLarge);
  }

  TEST_CASE("long-time evolution reaches the steady state") {
    const FockTruncation t(12);
    const auto L = build_liouvillian(LaserParams::from_dimensionless(0.3, 0.5, 0.3), t);
    const auto target = steady_state(L, 1e-6);
    const auto rho = evolve(DensityMatrix::basis_state(t, 2, 3), L, 150.0, 0.08 / L.norm_inf());
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-8);
    ComplexMatrix diff = rho.matrix();
    diff -= target.matrix();
    CHECK(0.5 * trace_norm_sector_diagonal(diff, t) <= 1e-6);
  }
}
