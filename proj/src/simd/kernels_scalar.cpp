// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kernels_impl.hpp"

namespace modspace::simd::detail {

void scale_by_real_scalar(cplx* x, const double* w, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) x[i] *= w[i];
}

void mul_scalar(cplx* a, const cplx* b, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    a[i] = {re, im};
  }
}

void mul_conj_scalar(cplx* a, const cplx* b, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double re = a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    const double im = a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    a[i] = {re, im};
  }
}

double sum_abs2_scalar(const cplx* x, std::size_t count) {
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) acc += std::norm(x[i]);
  return acc;
}

cplx dot_scalar(const cplx* a, const cplx* b, std::size_t count) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void abs2_scalar(const cplx* vec, int m, double* out, std::size_t count) {
  for (std::size_t x = 0; x < count; ++x) {
    double acc = 0.0;
    for (int c = 0; c < m; ++c) acc += std::norm(vec[c * count + x]);
    out[x] = acc;
  }
}

void matvec_abs2_scalar(const cplx* mat, const cplx* vec, int m, double* out,
                        std::size_t count) {
  for (std::size_t x = 0; x < count; ++x) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
      double re = 0.0, im = 0.0;
      for (int j = 0; j < m; ++j) {
        const cplx a = mat[(i * m + j) * count + x];
        const cplx v = vec[j * count + x];
        re += a.real() * v.real() - a.imag() * v.imag();
        im += a.real() * v.imag() + a.imag() * v.real();
      }
      acc += re * re + im * im;
    }
    out[x] = acc;
  }
}

}  // namespace modspace::simd::detail
