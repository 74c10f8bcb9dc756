// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace modspace::simd::detail {
namespace {

// Two interleaved complex numbers per register: [re0, im0, re1, im1].
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

// Per-point sums of adjacent lanes for four points held in two registers.
inline void store_pair_sums(double* out, __m256d a, __m256d b) {
  const __m256d h = _mm256_hadd_pd(a, b);  // [p0, p2, p1, p3]
  _mm256_storeu_pd(out, _mm256_permute4x64_pd(h, 0xD8));
}

}  // namespace

void scale_by_real_avx2(cplx* x, const double* w, std::size_t count) {
  double* xd = as_doubles(x);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const __m128d wv = _mm_loadu_pd(w + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wv), 0x50);
    _mm256_storeu_pd(xd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i), ww));
  }
  for (; i < count; ++i) x[i] *= w[i];
}

void mul_avx2(cplx* a, const cplx* b, std::size_t count) {
  double* ad = as_doubles(a);
  const double* bd = as_doubles(b);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    _mm256_storeu_pd(ad + 2 * i,
                     cmul(_mm256_loadu_pd(ad + 2 * i), _mm256_loadu_pd(bd + 2 * i)));
  }
  if (i < count) mul_scalar(a + i, b + i, count - i);
}

void mul_conj_avx2(cplx* a, const cplx* b, std::size_t count) {
  double* ad = as_doubles(a);
  const double* bd = as_doubles(b);
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const __m256d bc = _mm256_xor_pd(_mm256_loadu_pd(bd + 2 * i), conj_mask);
    _mm256_storeu_pd(ad + 2 * i, cmul(_mm256_loadu_pd(ad + 2 * i), bc));
  }
  if (i < count) mul_conj_scalar(a + i, b + i, count - i);
}

double sum_abs2_avx2(const cplx* x, std::size_t count) {
  const double* xd = as_doubles(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(xd + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < count; ++i) total += std::norm(x[i]);
  return total;
}

cplx dot_avx2(const cplx* a, const cplx* b, std::size_t count) {
  const double* ad = as_doubles(a);
  const double* bd = as_doubles(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(ad + 2 * i), _mm256_loadu_pd(bd + 2 * i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx total{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  if (i < count) total += dot_scalar(a + i, b + i, count - i);
  return total;
}

void abs2_avx2(const cplx* vec, int m, double* out, std::size_t count) {
  std::size_t x = 0;
  for (; x + 4 <= count; x += 4) {
    __m256d lo = _mm256_setzero_pd();
    __m256d hi = _mm256_setzero_pd();
    for (int c = 0; c < m; ++c) {
      const double* v = as_doubles(vec + c * count + x);
      const __m256d a = _mm256_loadu_pd(v);
      const __m256d b = _mm256_loadu_pd(v + 4);
      lo = _mm256_fmadd_pd(a, a, lo);
      hi = _mm256_fmadd_pd(b, b, hi);
    }
    store_pair_sums(out + x, lo, hi);
  }
  for (; x < count; ++x) {
    double acc = 0.0;
    for (int c = 0; c < m; ++c) acc += std::norm(vec[c * count + x]);
    out[x] = acc;
  }
}

void matvec_abs2_avx2(const cplx* mat, const cplx* vec, int m, double* out,
                      std::size_t count) {
  std::size_t x = 0;
  for (; x + 4 <= count; x += 4) {
    __m256d sq_lo = _mm256_setzero_pd();
    __m256d sq_hi = _mm256_setzero_pd();
    for (int i = 0; i < m; ++i) {
      __m256d row_lo = _mm256_setzero_pd();
      __m256d row_hi = _mm256_setzero_pd();
      for (int j = 0; j < m; ++j) {
        const double* a = as_doubles(mat + (i * m + j) * count + x);
        const double* v = as_doubles(vec + j * count + x);
        row_lo = _mm256_add_pd(row_lo, cmul(_mm256_loadu_pd(a), _mm256_loadu_pd(v)));
        row_hi = _mm256_add_pd(row_hi, cmul(_mm256_loadu_pd(a + 4), _mm256_loadu_pd(v + 4)));
      }
      sq_lo = _mm256_fmadd_pd(row_lo, row_lo, sq_lo);
      sq_hi = _mm256_fmadd_pd(row_hi, row_hi, sq_hi);
    }
    store_pair_sums(out + x, sq_lo, sq_hi);
  }
  if (x < count) {
    // The scalar tail walks the same plane-major layout with an offset.
    for (; x < count; ++x) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        cplx row{0.0, 0.0};
        for (int j = 0; j < m; ++j) row += mat[(i * m + j) * count + x] * vec[j * count + x];
        acc += std::norm(row);
      }
      out[x] = acc;
    }
  }
}

}  // namespace modspace::simd::detail
