#pragma once

// Inner loops of the dense complex linear algebra. Every kernel has a scalar
// reference implementation; vector variants are chosen once at runtime from
// what the CPU reports and must agree with the reference to rounding.
//
// Set SEL_SIMD=scalar in the environment to pin the scalar path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace sel::numerics::kernels {

using Complex = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // y[i] += alpha * x[i]
  void (*caxpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
  // sum x[i] * y[i], unconjugated
  Complex (*cdotu)(const Complex* x, const Complex* y, std::size_t n);
  // max |x[i]|
  double (*cabs_max)(const Complex* x, std::size_t n);
};

/// Whether the variant was compiled in and the running CPU supports it.
bool available(Isa isa) noexcept;

/// Table for a specific variant; falls back to scalar when unavailable.
const KernelTable& table(Isa isa) noexcept;

/// Table selected for this process (resolved on first call).
const KernelTable& active() noexcept;

inline void caxpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) noexcept {
  active().caxpy(alpha, x.data(), y.data(), x.size());
}

inline Complex cdotu(std::span<const Complex> x, std::span<const Complex> y) noexcept {
  return active().cdotu(x.data(), y.data(), x.size());
}

inline double cabs_max(std::span<const Complex> x) noexcept {
  return active().cabs_max(x.data(), x.size());
}

namespace scalar {
void caxpy(Complex alpha, const Complex* x, Complex* y, std::size_t n);
Complex cdotu(const Complex* x, const Complex* y, std::size_t n);
double cabs_max(const Complex* x, std::size_t n);
}  // namespace scalar

#if defined(SEL_HAVE_AVX2)
namespace avx2 {
void caxpy(Complex alpha, const Complex* x, Complex* y, std::size_t n);
Complex cdotu(const Complex* x, const Complex* y, std::size_t n);
double cabs_max(const Complex* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace sel::numerics::kernels
