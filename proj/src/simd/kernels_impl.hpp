// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "modspace/simd/kernels.hpp"

namespace modspace::simd::detail {

void scale_by_real_scalar(cplx* x, const double* w, std::size_t count);
void mul_scalar(cplx* a, const cplx* b, std::size_t count);
void mul_conj_scalar(cplx* a, const cplx* b, std::size_t count);
double sum_abs2_scalar(const cplx* x, std::size_t count);
cplx dot_scalar(const cplx* a, const cplx* b, std::size_t count);
void abs2_scalar(const cplx* vec, int m, double* out, std::size_t count);
void matvec_abs2_scalar(const cplx* mat, const cplx* vec, int m, double* out,
                        std::size_t count);

#if defined(MODSPACE_HAVE_AVX2)
void scale_by_real_avx2(cplx* x, const double* w, std::size_t count);
void mul_avx2(cplx* a, const cplx* b, std::size_t count);
void mul_conj_avx2(cplx* a, const cplx* b, std::size_t count);
double sum_abs2_avx2(const cplx* x, std::size_t count);
cplx dot_avx2(const cplx* a, const cplx* b, std::size_t count);
void abs2_avx2(const cplx* vec, int m, double* out, std::size_t count);
void matvec_abs2_avx2(const cplx* mat, const cplx* vec, int m, double* out,
                      std::size_t count);
#endif

}  // namespace modspace::simd::detail
