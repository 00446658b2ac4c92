#include "sel/numerics/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string_view>

namespace sel::numerics::kernels {

namespace scalar {

void caxpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = Complex(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
  }
}

Complex cdotu(const Complex* x, const Complex* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

double cabs_max(const Complex* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

}  // namespace scalar

namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::caxpy, &scalar::cdotu,
                                   &scalar::cabs_max};

#if defined(SEL_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::caxpy, &avx2::cdotu, &avx2::cabs_max};
#endif

bool scalar_forced() noexcept {
  const char* env = std::getenv("SEL_SIMD");
  return env != nullptr && std::string_view(env) == "scalar";
}

const KernelTable& resolve() noexcept {
  if (!scalar_forced() && available(Isa::kAvx2)) return table(Isa::kAvx2);
  return kScalarTable;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if defined(SEL_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) noexcept {
#if defined(SEL_HAVE_AVX2)
  if (isa == Isa::kAvx2 && available(Isa::kAvx2)) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

const KernelTable& active() noexcept {
  static const KernelTable& selected = resolve();
  return selected;
}

}  // namespace sel::numerics::kernels
