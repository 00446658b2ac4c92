#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sel/error.hpp"
#include "sel/numerics/complex_matrix.hpp"
#include "sel/numerics/finite_part.hpp"
#include "sel/numerics/kernels.hpp"
#include "sel/numerics/linear_solve.hpp"
#include "sel/numerics/quadrature.hpp"
#include "sel/numerics/special_functions.hpp"

using namespace sel;
using namespace sel::numerics;

namespace {

ComplexVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  ComplexVector v(n);
  for (auto& z : v) z = {normal(rng), normal(rng)};
  return v;
}

double erf_taylor(double x) {
  double sum = 0.0;
  double power = x;  // x^{2n+1} / n! with alternating sign
  for (int n = 0; n < 60; ++n) {
    sum += power / (2 * n + 1);
    power *= -x * x / (n + 1);
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

double bessel_series(int order, double x) {
  double term = std::pow(x / 2.0, order) / std::tgamma(order + 1.0);
  double sum = 0.0;
  for (int k = 0; k < 200 && term != 0.0; ++k) {
    sum += term;
    term *= (x / 2.0) * (x / 2.0) / ((k + 1.0) * (k + 1.0 + order));
  }
  return sum;
}

double q2_closed(double i) {
  const double norm = 1.0 + std::sqrt(2.0 * std::numbers::e * std::numbers::pi) * std::erf(1.0 / std::sqrt(2.0));
  if (i == 0.0) return 2.0 / norm;
  const double r = std::sqrt(2.0 * i);
  return std::exp(-i) * (std::cosh(r) + std::sinh(r) / r) / norm;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("vector variants agree with the scalar reference") {
    std::mt19937_64 rng(7);
    const auto& ref = kernels::table(kernels::Isa::kScalar);
    for (auto isa : {kernels::Isa::kScalar, kernels::Isa::kAvx2}) {
      if (!kernels::available(isa)) continue;
      const auto& k = kernels::table(isa);
      CHECK(k.isa == isa);
      for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 16u, 33u, 257u}) {
        const auto x = random_vector(rng, n);
        const auto y0 = random_vector(rng, n);
        const Complex alpha{0.3, -1.7};

        auto y_ref = y0;
        auto y_vec = y0;
        ref.caxpy(alpha, x.data(), y_ref.data(), n);
        k.caxpy(alpha, x.data(), y_vec.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y_ref[i] - y_vec[i]) <= 1e-14 * (1 + std::abs(y_ref[i])));

        const Complex d_ref = ref.cdotu(x.data(), y0.data(), n);
        const Complex d_vec = k.cdotu(x.data(), y0.data(), n);
        CHECK(std::abs(d_ref - d_vec) <= 1e-13 * (1.0 + static_cast<double>(n)));

        CHECK(ref.cabs_max(x.data(), n) == doctest::Approx(k.cabs_max(x.data(), n)).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("unavailable variant falls back to scalar") {
    if (!kernels::available(kernels::Isa::kAvx2)) {
      CHECK(kernels::table(kernels::Isa::kAvx2).isa == kernels::Isa::kScalar);
    }
    CHECK(kernels::available(kernels::Isa::kScalar));
  }
}

TEST_SUITE("complex_matrix") {
  TEST_CASE("products and adjoints") {
    ComplexMatrix a(2, 3);
    a(0, 0) = 1;
    a(0, 2) = Complex(0, 2);
    a(1, 1) = 3;
    const auto ah = a.adjoint();
    CHECK(ah.rows() == 3);
    CHECK(ah(2, 0) == Complex(0, -2));
    const auto p = a * ah;
    CHECK(p(0, 0) == Complex(5, 0));
    CHECK(p(1, 1) == Complex(9, 0));
    CHECK(hermiticity_defect(p) == 0.0);
    CHECK_THROWS_AS(a * a, DimensionMismatch);
    CHECK(ComplexMatrix::identity(4).trace() == Complex(4, 0));
  }
}

TEST_SUITE("linear_solve") {
  TEST_CASE("identity") {
    const ComplexVector b{1.0, Complex(0, 2), -3.0};
    const auto x = solve_linear(ComplexMatrix::identity(3), b);
    for (int i = 0; i < 3; ++i) CHECK(x[i] == b[i]);
  }

  TEST_CASE("diagonal") {
    ComplexMatrix a(2, 2);
    a(0, 0) = 2;
    a(1, 1) = 4;
    const auto x = solve_linear(a, ComplexVector{2.0, 2.0});
    CHECK(x[0] == Complex(1.0));
    CHECK(x[1] == Complex(0.5));
    CHECK(LuFactorization(a).determinant() == Complex(8.0));
  }

  TEST_CASE("rank deficient") {
    ComplexMatrix a(2, 2);
    a(0, 0) = a(0, 1) = a(1, 0) = a(1, 1) = 1;
    CHECK_THROWS_AS(solve_linear(a, ComplexVector{1.0, 0.0}), SingularMatrix);
    CHECK_THROWS_AS(solve_linear(ComplexMatrix(2, 3), ComplexVector{1.0, 0.0}), DimensionMismatch);
  }

  TEST_CASE("random round trip and adjoint solve") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 5u, 20u, 64u}) {
      ComplexMatrix a(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        const auto row = random_vector(rng, n);
        for (std::size_t c = 0; c < n; ++c) a(r, c) = row[c];
        a(r, r) += 2.0 * static_cast<double>(n);
      }
      const auto b = random_vector(rng, n);
      const auto x = solve_linear(a, b);
      auto ax = multiply(a, x);
      for (std::size_t i = 0; i < n; ++i) ax[i] -= b[i];
      CHECK(norm_inf(ax) <= 1e-9 * norm_inf(b));

      const LuFactorization lu(a);
      const auto y = lu.solve_adjoint(b);
      auto ahy = multiply(a.adjoint(), y);
      for (std::size_t i = 0; i < n; ++i) ahy[i] -= b[i];
      CHECK(norm_inf(ahy) <= 1e-9 * norm_inf(b));
    }
  }

  TEST_CASE("smallest singular value") {
    ComplexMatrix a(3, 3);
    a(0, 0) = 1;
    a(1, 1) = Complex(0, 2);
    a(2, 2) = 1e-3;
    CHECK(smallest_singular_value(a) == doctest::Approx(1e-3).epsilon(1e-8));
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("Gamma family") {
    QuadratureSpec spec;
    for (int k = 0; k <= 6; ++k) {
      const double v = integrate_semi_infinite([k](double x) { return std::pow(x, k) * std::exp(-x); }, spec);
      CHECK(std::abs(v - std::tgamma(k + 1.0)) <= 1e-8 * std::tgamma(k + 1.0));
    }
  }

  TEST_CASE("finite intervals") {
    CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
          doctest::Approx(2.0).epsilon(1e-13));
    QuadratureSpec loose;
    loose.rel_tol = 1e-9;
    loose.abs_tol = 1e-12;
    CHECK(integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, loose).value ==
          doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("errors") {
    QuadratureSpec tight;
    tight.max_subdivisions = 8;
    CHECK_THROWS_AS(integrate_interval([](double x) { return std::sin(400.0 * x); }, 0.0, 50.0, tight),
                    NonConvergent);
    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = {};
    bad.max_subdivisions = 4;
    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, bad), DomainError);
    CHECK_THROWS_AS(integrate_interval([](double) { return std::nan(""); }, 0.0, 1.0), DomainError);
  }
}

TEST_SUITE("special_functions") {
  TEST_CASE("erf") {
    CHECK(numerics::erf(0.0) == 0.0);
    const double x = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(numerics::erf(x) - erf_taylor(x)) <= 1e-13);
    CHECK(std::abs(numerics::erf(x) - 0.6826895) <= 1e-7);
  }

  TEST_CASE("Bessel I0 and I1 against the power series") {
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i1(0.0) == 0.0);
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      CHECK(bessel_i0(x) == doctest::Approx(bessel_series(0, x)).epsilon(1e-10));
      CHECK(bessel_i1(x) == doctest::Approx(bessel_series(1, x)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(bessel_i0(-1.0), DomainError);
    CHECK_THROWS_AS(bessel_i1(-1.0), DomainError);
  }

  TEST_CASE("stable cosh/sinh combination") {
    CHECK(stable_cosh_sinh_combo(0.0) == 2.0);
    for (double i : {1e-12, 1e-6, 0.01, 0.5, 1.0, 3.0, 10.0, 50.0}) {
      const double r = std::sqrt(2.0 * i);
      const double direct = std::exp(-i) * (std::cosh(r) + std::sinh(r) / r);
      CHECK(stable_cosh_sinh_combo(i) == doctest::Approx(direct).epsilon(1e-10));
    }
    const double far = stable_cosh_sinh_combo(1e6);
    CHECK(std::isfinite(far));
    CHECK(far >= 0.0);
    CHECK_THROWS_AS(stable_cosh_sinh_combo(-0.1), DomainError);
  }
}

TEST_SUITE("finite_part") {
  TEST_CASE("zero integrand") {
    CHECK(finite_part_integral([](double) { return 0.0; }, 0.5, 1.5) == 0.0);
  }

  TEST_CASE("closed-form Hadamard values") {
    // f.p. int_0^1/2 (1-2x)^{-3/2} dx = -1 and f.p. int_0^1/2 x (1-2x)^{-3/2} dx = -1
    CHECK(finite_part_integral([](double) { return 1.0; }, 0.5, 1.5) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(finite_part_integral([](double x) { return x; }, 0.5, 1.5) == doctest::Approx(-1.0).epsilon(1e-10));
    // f.p. int_0^2 x^2 (1-x/2)^{-3/2} dx: u = 1 - x/2 gives 8 f.p. int_0^1 (1-u)^2 u^{-3/2} du = 8 (-2 - 4 + 2/3)
    CHECK(finite_part_integral([](double x) { return x * x; }, 2.0, 1.5) ==
          doctest::Approx(8.0 * (-2.0 - 4.0 + 2.0 / 3.0)).epsilon(1e-9));
  }

  TEST_CASE("linear in g") {
    auto g1 = [](double x) { return std::exp(-x) * std::cos(x); };
    auto g2 = [](double x) { return x * x * x; };
    const double a = finite_part_integral(g1, 0.5, 1.5);
    const double b = finite_part_integral(g2, 0.5, 1.5);
    const double c = finite_part_integral([&](double x) { return 2.0 * g1(x) - 3.0 * g2(x); }, 0.5, 1.5);
    CHECK(c == doctest::Approx(2.0 * a - 3.0 * b).epsilon(1e-10));
  }

  TEST_CASE("reduces to ordinary quadrature away from the singularity") {
    auto g = [](double x) { return x < 0.3 ? std::pow(x * (0.3 - x), 4) : 0.0; };
    const double fp = finite_part_integral(g, 0.5, 1.5);
    const double ordinary =
        integrate_interval([&](double x) { return g(x) / std::pow(1.0 - 2.0 * x, 1.5); }, 0.0, 0.3).value;
    CHECK(fp == doctest::Approx(ordinary).epsilon(1e-9));
  }

  TEST_CASE("Bessel kernel reproduces the closed-form limit solution") {
    const double c0 = -q2_closed(0.0);
    for (double i : {0.0, 1.0, 2.5}) {
      auto kernel = [i](double x) { return x * bessel_i0(2.0 * std::sqrt(i * x)); };
      const double q = c0 * std::exp(-i) * finite_part_integral(kernel, 0.5, 1.5);
      CHECK(q == doctest::Approx(q2_closed(i)).epsilon(1e-8));
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(finite_part_integral([](double) { return 1.0; }, 0.0, 1.5), SingularityOutOfDomain);
    CHECK_THROWS_AS(finite_part_integral([](double) { return 1.0; }, -1.0, 1.5), SingularityOutOfDomain);
    CHECK_THROWS_AS(finite_part_integral([](double) { return 1.0; }, 0.5, 1.25), DomainError);
  }
}
