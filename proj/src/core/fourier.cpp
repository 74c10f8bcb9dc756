// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/core/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "modspace/error.hpp"

namespace modspace {
namespace {

// Planner calls are not thread-safe in FFTW; execution with the new-array
// interface is. Plans are created once per shape and kept for the process.
class PlanCache {
 public:
  fftw_plan get(int n, std::size_t N, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, N, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = n == 1 ? N : N * N;
    fftw_complex* buf = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = n == 1 ? fftw_plan_dft_1d(static_cast<int>(N), buf, buf, sign, flags)
                            : fftw_plan_dft_2d(static_cast<int>(N), static_cast<int>(N), buf,
                                               buf, sign, flags);
    fftw_free(buf);
    if (plan == nullptr) fail(ErrorKind::numerical, "FFTW could not create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// (-1)^(j0 + j1): the phase that recentres the lattice on [-L, L) and
// [-N/2, N/2) dxi. N/2 is even for N >= 16, so no extra global sign.
void alternate_signs(const GridSpec& grid, std::span<cplx> s) {
  const std::size_t N = grid.N;
  if (grid.n == 1) {
    for (std::size_t j = 1; j < N; j += 2) s[j] = -s[j];
    return;
  }
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = (a & 1) ? 0 : 1; b < N; b += 2) s[a * N + b] = -s[a * N + b];
  }
}

void scale(std::span<cplx> s, double c) {
  for (cplx& z : s) z *= c;
}

}  // namespace

void raw_dft(const GridSpec& grid, std::span<cplx> samples, int sign) {
  if (samples.size() != grid.points())
    fail(ErrorKind::contract, "raw_dft: sample count does not match grid");
  fftw_plan plan = plan_cache().get(grid.n, grid.N, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* p = reinterpret_cast<fftw_complex*>(samples.data());
  fftw_execute_dft(plan, p, p);
}

void forward_samples(const GridSpec& grid, std::span<cplx> s) {
  alternate_signs(grid, s);
  raw_dft(grid, s, -1);
  alternate_signs(grid, s);
  scale(s, std::pow(2.0 * std::numbers::pi, -0.5 * grid.n) * grid.cell_volume());
}

void inverse_samples(const GridSpec& grid, std::span<cplx> s) {
  alternate_signs(grid, s);
  raw_dft(grid, s, +1);
  alternate_signs(grid, s);
  scale(s, std::pow(2.0 * std::numbers::pi, -0.5 * grid.n) * grid.freq_cell_volume());
}

VectorField fourier_transform(const VectorField& f, Direction dir) {
  const Side expected = dir == Direction::forward ? Side::physical : Side::frequency;
  if (f.side() != expected)
    fail(ErrorKind::contract,
         dir == Direction::forward ? "forward transform expects a physical-side field"
                                   : "inverse transform expects a frequency-side field");
  f.require_finite();
  VectorField result(f.grid(), dir == Direction::forward ? Side::frequency : Side::physical);
  for (int c = 0; c < f.m(); ++c) {
    auto dst = result.component(c);
    auto src = f.component(c);
    std::copy(src.begin(), src.end(), dst.begin());
    if (dir == Direction::forward)
      forward_samples(f.grid(), dst);
    else
      inverse_samples(f.grid(), dst);
  }
  return result;
}

}  // namespace modspace
