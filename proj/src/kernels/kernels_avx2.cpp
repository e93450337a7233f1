// Built with -mavx2 -mfma. Only called after a runtime cpu check.
#include <immintrin.h>

#include "schubert/kernels.hpp"

namespace schubert::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// two complex numbers packed as [re0 im0 re1 im1]
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d x) {
  __m256d xs = _mm256_permute_pd(x, 0x5);  // [im0 re0 im1 re1]
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, xs));
}

}  // namespace

void caxpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d x1 = _mm256_loadu_pd(xp + 2 * i + 4);
    __m256d y0 = _mm256_loadu_pd(yp + 2 * i);
    __m256d y1 = _mm256_loadu_pd(yp + 2 * i + 4);
    y0 = _mm256_add_pd(y0, cmul_bcast(ar, ai, x0));
    y1 = _mm256_add_pd(y1, cmul_bcast(ar, ai, x1));
    _mm256_storeu_pd(yp + 2 * i, y0);
    _mm256_storeu_pd(yp + 2 * i + 4, y1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d x0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d y0 = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(y0, cmul_bcast(ar, ai, x0)));
  }
  if (i < n) scalar::caxpy(n - i, a, x + i, y + i);
}

Complex cdotu(std::size_t n, const Complex* x, const Complex* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    __m256d xr = _mm256_movedup_pd(xv);            // [xr0 xr0 xr1 xr1]
    __m256d xi = _mm256_permute_pd(xv, 0xF);       // [xi0 xi0 xi1 xi1]
    __m256d ys = _mm256_permute_pd(yv, 0x5);       // [yi0 yr0 yi1 yr1]
    acc0 = _mm256_fmadd_pd(xr, yv, acc0);           // [xr*yr, xr*yi, ...]
    acc1 = _mm256_fmadd_pd(xi, ys, acc1);           // [xi*yi, xi*yr, ...]
  }
  // re = sum(acc0 even) - sum(acc1 even); im = sum(acc0 odd) + sum(acc1 odd)
  alignas(32) double a0[4], a1[4];
  _mm256_store_pd(a0, acc0);
  _mm256_store_pd(a1, acc1);
  double re = (a0[0] + a0[2]) - (a1[0] + a1[2]);
  double im = (a0[1] + a0[3]) + (a1[1] + a1[3]);
  if (i < n) {
    Complex tail = scalar::cdotu(n - i, x + i, y + i);
    re += tail.real();
    im += tail.imag();
  }
  return {re, im};
}

double cnorm2(std::size_t n, const Complex* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    __m256d v0 = _mm256_loadu_pd(xp + i);
    __m256d v1 = _mm256_loadu_pd(xp + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= m; i += 4) {
    __m256d v0 = _mm256_loadu_pd(xp + i);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < m; ++i) s += xp[i] * xp[i];
  return s;
}

}  // namespace schubert::kernels::avx2
