// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "sel/numerics/kernels.hpp"

namespace sel::numerics::kernels::avx2 {

namespace {

// Two complex doubles per register as [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void caxpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    store2(y + i, _mm256_add_pd(load2(y + i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = Complex(y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                   y[i].imag() + (alpha.real() * xi + alpha.imag() * xr));
  }
}

Complex cdotu(const Complex* x, const Complex* y, std::size_t n) {
  // direct: [xr*yr, xi*yi], crossed: [xr*yi, xi*yr]
  __m256d direct0 = _mm256_setzero_pd();
  __m256d crossed0 = _mm256_setzero_pd();
  __m256d direct1 = _mm256_setzero_pd();
  __m256d crossed1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = load2(x + i);
    const __m256d y0 = load2(y + i);
    const __m256d x1 = load2(x + i + 2);
    const __m256d y1 = load2(y + i + 2);
    direct0 = _mm256_fmadd_pd(x0, y0, direct0);
    crossed0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0b0101), crossed0);
    direct1 = _mm256_fmadd_pd(x1, y1, direct1);
    crossed1 = _mm256_fmadd_pd(x1, _mm256_permute_pd(y1, 0b0101), crossed1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = load2(x + i);
    const __m256d y0 = load2(y + i);
    direct0 = _mm256_fmadd_pd(x0, y0, direct0);
    crossed0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0b0101), crossed0);
  }
  const __m256d direct = _mm256_add_pd(direct0, direct1);
  const __m256d crossed = _mm256_add_pd(crossed0, crossed1);
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(_mm256_mul_pd(direct, sign));
  double im = hsum(crossed);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

double cabs_max(const Complex* x, std::size_t n) {
  // compare squared moduli, take one sqrt at the end
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(x + i);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d mod2 = _mm256_hadd_pd(sq, sq);
    best = _mm256_max_pd(best, mod2);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m2 = lanes[0] > lanes[2] ? lanes[0] : lanes[2];
  for (; i < n; ++i) {
    const double r = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    if (r > m2) m2 = r;
  }
  return std::sqrt(m2);
}

}  // namespace sel::numerics::kernels::avx2
