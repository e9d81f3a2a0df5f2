// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "qwgo/simd.hpp"

#include <immintrin.h>

namespace qwgo::simd::avx2 {
namespace {

// std::complex<double> is layout-compatible with double[2]; one __m256d holds
// two complex values as (re0, im0, re1, im1).
inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const double* xs = as_doubles(x);
  double* ys = as_doubles(y);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * j);
    const __m256d yv = _mm256_loadu_pd(ys + 2 * j);
    // (xr, xi) -> (xi, xr)
    const __m256d xswap = _mm256_permute_pd(xv, 0b0101);
    // ar*x +/- ai*swap(x): real lane subtracts, imag lane adds.
    const __m256d t = _mm256_mul_pd(ai, xswap);
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, t);
    _mm256_storeu_pd(ys + 2 * j, _mm256_add_pd(yv, prod));
  }
  for (; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = {y[j].real() + (a.real() * xr - a.imag() * xi),
            y[j].imag() + (a.real() * xi + a.imag() * xr)};
  }
}

void scale_by_real(const double* d, cplx* y, std::size_t n) {
  double* ys = as_doubles(y);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    // (d0, d0, d1, d1)
    const __m128d dv = _mm_loadu_pd(d + j);
    const __m256d dd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(dv), 0b01010000);
    _mm256_storeu_pd(ys + 2 * j, _mm256_mul_pd(_mm256_loadu_pd(ys + 2 * j), dd));
  }
  for (; j < n; ++j) y[j] = {y[j].real() * d[j], y[j].imag() * d[j]};
}

double norm_sq(const cplx* x, double* out, std::size_t n) {
  const double* xs = as_doubles(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_loadu_pd(xs + 2 * j);
    const __m256d b = _mm256_loadu_pd(xs + 2 * j + 4);
    // hadd gives (|x0|^2, |x2|^2, |x1|^2, |x3|^2); restore order.
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    const __m256d p = _mm256_permute4x64_pd(h, 0b11011000);
    _mm256_storeu_pd(out + j, p);
    acc = _mm256_add_pd(acc, p);
  }
  double total = hsum(acc);
  for (; j < n; ++j) {
    const double p = x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
    out[j] = p;
    total += p;
  }
  return total;
}

double total_norm_sq(const cplx* x, std::size_t n) {
  const double* xs = as_doubles(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_loadu_pd(xs + 2 * j);
    const __m256d b = _mm256_loadu_pd(xs + 2 * j + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) total += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
  return total;
}

cplx sum(const cplx* x, std::size_t n) {
  const double* xs = as_doubles(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(xs + 2 * j));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(xs + 2 * j + 4));
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double re = _mm_cvtsd_f64(s);
  double im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  for (; j < n; ++j) {
    re += x[j].real();
    im += x[j].imag();
  }
  return {re, im};
}

void reflect(cplx c, cplx* x, std::size_t n) {
  const __m256d cv = _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
  double* xs = as_doubles(x);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2)
    _mm256_storeu_pd(xs + 2 * j, _mm256_sub_pd(cv, _mm256_loadu_pd(xs + 2 * j)));
  for (; j < n; ++j) x[j] = {c.real() - x[j].real(), c.imag() - x[j].imag()};
}

void negate_masked(const std::uint8_t* mask, cplx* x, std::size_t n) {
  double* xs = as_doubles(x);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const double s0 = mask[j] ? -0.0 : 0.0;
    const double s1 = mask[j + 1] ? -0.0 : 0.0;
    const __m256d flip = _mm256_and_pd(sign, _mm256_setr_pd(s0, s0, s1, s1));
    _mm256_storeu_pd(xs + 2 * j, _mm256_xor_pd(_mm256_loadu_pd(xs + 2 * j), flip));
  }
  for (; j < n; ++j)
    if (mask[j]) x[j] = {-x[j].real(), -x[j].imag()};
}

void scale(double s, cplx* x, std::size_t n) {
  const __m256d sv = _mm256_set1_pd(s);
  double* xs = as_doubles(x);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2)
    _mm256_storeu_pd(xs + 2 * j, _mm256_mul_pd(_mm256_loadu_pd(xs + 2 * j), sv));
  for (; j < n; ++j) x[j] = {x[j].real() * s, x[j].imag() * s};
}

constexpr KernelTable kTable{caxpy, scale_by_real, norm_sq, total_norm_sq,
                             sum,   reflect,       negate_masked, scale};

}  // namespace

const KernelTable* table() { return &kTable; }

}  // namespace qwgo::simd::avx2
