// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

// Pointwise inner loops shared by every norm in the library. Each table
// entry has a scalar reference implementation; an AVX2/FMA variant is
// compiled separately and selected at runtime when the CPU supports it.
//
// Matrix fields are stored plane-major: entry (i, j) of the m x m matrix
// at point x lives at mat[(i * m + j) * count + x]. Vector fields are
// stored component-major: component c at point x is vec[c * count + x].

#include <complex>
#include <cstddef>
#include <string_view>

namespace modspace::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // x[i] *= w[i]
  void (*scale_by_real)(cplx* x, const double* w, std::size_t count);
  // a[i] *= b[i]
  void (*mul)(cplx* a, const cplx* b, std::size_t count);
  // a[i] *= conj(b[i])
  void (*mul_conj)(cplx* a, const cplx* b, std::size_t count);
  // sum_i |x[i]|^2
  double (*sum_abs2)(const cplx* x, std::size_t count);
  // sum_i a[i] * b[i]  (bilinear, no conjugation)
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t count);
  // out[x] = sum_c |vec_c[x]|^2
  void (*abs2)(const cplx* vec, int m, double* out, std::size_t count);
  // out[x] = |M(x) v(x)|^2 for the plane-major matrix field M
  void (*matvec_abs2)(const cplx* mat, const cplx* vec, int m, double* out,
                      std::size_t count);
};

const KernelTable& scalar_kernels();

// nullptr when the build has no AVX2 variant or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

// The table used by the library: AVX2 when available, unless the
// environment variable MODSPACE_SIMD=scalar forces the reference path.
const KernelTable& active_kernels();

// Overrides the active table ("scalar" or "avx2"); returns false if the
// requested variant is unavailable.
bool select_kernels(std::string_view name);

}  // namespace modspace::simd
