// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>

#include "modspace/simd/kernels.hpp"
#include "oracles.hpp"

using modspace::cplx;
namespace simd = modspace::simd;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

const std::size_t kCounts[] = {0, 1, 3, 4, 5, 7, 8, 17, 64, 255, 1000};

}  // namespace

TEST_CASE("scalar kernels match direct std::complex arithmetic") {
  const auto& k = simd::scalar_kernels();
  for (std::size_t n : kCounts) {
    auto a = oracle::random_samples(n, 1), b = oracle::random_samples(n, 2);
    auto m = a, mc = a;
    k.mul(m.data(), b.data(), n);
    k.mul_conj(mc.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(rel(m[i], a[i] * b[i]) < 1e-15);
      CHECK(rel(mc[i], a[i] * std::conj(b[i])) < 1e-15);
    }
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const simd::KernelTable* v = simd::avx2_kernels();
  if (v == nullptr) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    return;
  }
  const auto& s = simd::scalar_kernels();
  for (std::size_t n : kCounts) {
    CAPTURE(n);
    auto a = oracle::random_samples(n, 3), b = oracle::random_samples(n, 4);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 + std::abs(a[i]);

    auto x1 = a, x2 = a;
    s.scale_by_real(x1.data(), w.data(), n);
    v->scale_by_real(x2.data(), w.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(x2[i], x1[i]) < 1e-15);

    x1 = a, x2 = a;
    s.mul(x1.data(), b.data(), n);
    v->mul(x2.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(x2[i], x1[i]) < 1e-14);

    x1 = a, x2 = a;
    s.mul_conj(x1.data(), b.data(), n);
    v->mul_conj(x2.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(x2[i], x1[i]) < 1e-14);

    const double e1 = s.sum_abs2(a.data(), n), e2 = v->sum_abs2(a.data(), n);
    CHECK(std::abs(e1 - e2) <= 1e-13 * std::max(1.0, e1));
    const cplx d1 = s.dot(a.data(), b.data(), n), d2 = v->dot(a.data(), b.data(), n);
    CHECK(std::abs(d1 - d2) <= 1e-13 * std::max(1.0, std::abs(d1)) * std::sqrt(static_cast<double>(n + 1)));

    for (int m = 1; m <= 3; ++m) {
      CAPTURE(m);
      auto vec = oracle::random_samples(n * m, 5);
      auto mat = oracle::random_samples(n * m * m, 6);
      std::vector<double> o1(n), o2(n);
      s.abs2(vec.data(), m, o1.data(), n);
      v->abs2(vec.data(), m, o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-14 * std::max(1.0, o1[i]));
      s.matvec_abs2(mat.data(), vec.data(), m, o1.data(), n);
      v->matvec_abs2(mat.data(), vec.data(), m, o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-13 * std::max(1.0, o1[i]));
    }
  }
}

TEST_CASE("matvec_abs2 reference computes |M v|^2 from plane-major storage") {
  const auto& s = simd::scalar_kernels();
  const std::size_t n = 9;
  const int m = 2;
  auto vec = oracle::random_samples(n * m, 7);
  auto mat = oracle::random_samples(n * m * m, 8);
  std::vector<double> out(n);
  s.matvec_abs2(mat.data(), vec.data(), m, out.data(), n);
  for (std::size_t x = 0; x < n; ++x) {
    double want = 0.0;
    for (int i = 0; i < m; ++i) {
      cplx acc = 0.0;
      for (int j = 0; j < m; ++j) acc += mat[(i * m + j) * n + x] * vec[j * n + x];
      want += std::norm(acc);
    }
    CHECK(out[x] == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("kernel selection") {
  CHECK(simd::select_kernels("scalar"));
  CHECK(simd::active_kernels().name == "scalar");
  if (simd::avx2_kernels() != nullptr) {
    CHECK(simd::select_kernels("avx2"));
    CHECK(simd::active_kernels().name == "avx2");
  } else {
    CHECK_FALSE(simd::select_kernels("avx2"));
  }
  CHECK_FALSE(simd::select_kernels("neon"));
}
