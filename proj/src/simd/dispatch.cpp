// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace modspace::simd {
namespace {

const KernelTable kScalar{
    "scalar",
    detail::scale_by_real_scalar,
    detail::mul_scalar,
    detail::mul_conj_scalar,
    detail::sum_abs2_scalar,
    detail::dot_scalar,
    detail::abs2_scalar,
    detail::matvec_abs2_scalar,
};

#if defined(MODSPACE_HAVE_AVX2)
const KernelTable kAvx2{
    "avx2",
    detail::scale_by_real_avx2,
    detail::mul_avx2,
    detail::mul_conj_avx2,
    detail::sum_abs2_avx2,
    detail::dot_avx2,
    detail::abs2_avx2,
    detail::matvec_abs2_avx2,
};

bool cpu_supports_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() {
  if (const char* env = std::getenv("MODSPACE_SIMD")) {
    if (std::string(env) == "scalar") return &kScalar;
  }
  if (const KernelTable* t = avx2_kernels()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#if defined(MODSPACE_HAVE_AVX2)
  static const bool ok = cpu_supports_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() { return *active_slot().load(); }

bool select_kernels(std::string_view name) {
  if (name == "scalar") {
    active_slot().store(&kScalar);
    return true;
  }
  if (name == "avx2") {
    if (const KernelTable* t = avx2_kernels()) {
      active_slot().store(t);
      return true;
    }
  }
  return false;
}

}  // namespace modspace::simd
