// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/freq/stft.hpp"

#include <cmath>
#include <numbers>

#include "modspace/core/fourier.hpp"
#include "modspace/error.hpp"
#include "modspace/simd/kernels.hpp"

namespace modspace {

StftWindow gaussian_window(int n) {
  const double norm = std::pow(std::numbers::pi, -0.25 * n);
  return [n, norm](const Point& x) {
    double r2 = 0.0;
    for (int d = 0; d < n; ++d) r2 += x[d] * x[d];
    return norm * std::exp(-0.5 * r2);
  };
}

StftPlan::StftPlan(const GridSpec& grid, const StftWindow& g) : grid_(grid), g_dft_(grid.points()) {
  grid.validate();
  const std::size_t N = grid.N;
  const double dx = grid.dx();
  // Offsets d in [0, N) stand for the periodic displacement d or d - N.
  auto offset = [&](std::size_t d) { return (d < N / 2 ? static_cast<double>(d) : static_cast<double>(d) - N) * dx; };
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const auto idx = grid.unflatten(i);
    const Point p{offset(idx[0]), grid.n == 2 ? offset(idx[1]) : 0.0};
    const double v = g(p);
    if (!std::isfinite(v)) fail(ErrorKind::data, "STFT window is not finite");
    g_dft_[i] = v;
  }
  raw_dft(grid, g_dft_, -1);
}

std::vector<cplx> StftPlan::dft(const VectorField& f) const {
  if (!f.grid().same_lattice(grid_)) fail(ErrorKind::contract, "STFT plan built for a different grid");
  if (f.side() != Side::physical) fail(ErrorKind::contract, "STFT takes a physical-side field");
  std::vector<cplx> out(f.data().begin(), f.data().end());
  for (int c = 0; c < f.m(); ++c) raw_dft(grid_, std::span<cplx>(out).subspan(c * f.count(), f.count()), -1);
  return out;
}

VectorField StftPlan::at_from_dft(std::span<const cplx> f_dft, const LatticeIndex& j) const {
  const GridSpec& g = grid_;
  std::size_t flat_unused;
  if (!g.frequency_index(j, flat_unused))
    fail(ErrorKind::parameter, "STFT frequency beyond Nyquist");
  const std::size_t N = g.N;
  const std::size_t count = g.points();
  VectorField out(g, Side::physical);
  // With y_b = -L + b dx and xi = j dxi, e^{-i y_b xi} = (-1)^j e^{-2 pi i b j / N},
  // so the DFT of the modulated field is the DFT of f shifted by j.
  int parity = 0;
  for (int d = 0; d < g.n; ++d) parity += j[d];
  const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
  auto wrap = [N](long v) { return static_cast<std::size_t>(((v % static_cast<long>(N)) + static_cast<long>(N)) % static_cast<long>(N)); };
  const double inv = g.cell_volume() / static_cast<double>(count);
  const auto& k = simd::active_kernels();
  for (int c = 0; c < g.m; ++c) {
    auto dst = out.component(c);
    const cplx* src = f_dft.data() + c * count;
    for (std::size_t i = 0; i < count; ++i) {
      const auto idx = g.unflatten(i);
      const std::size_t a = wrap(static_cast<long>(idx[0]) + j[0]);
      const std::size_t b = g.n == 2 ? wrap(static_cast<long>(idx[1]) + j[1]) : 0;
      dst[i] = sign * src[g.flatten(a, b)];
    }
    k.mul_conj(dst.data(), g_dft_.data(), count);
    raw_dft(g, dst, +1);
    for (cplx& z : dst) z *= inv;
  }
  return out;
}

VectorField StftPlan::at(const VectorField& f, const LatticeIndex& j) const { return at_from_dft(dft(f), j); }

std::vector<VectorField> stft(const VectorField& f, const StftWindow& g, std::span<const LatticeIndex> xi_list) {
  StftPlan plan(f.grid(), g);
  const auto fd = plan.dft(f);
  std::vector<VectorField> out;
  out.reserve(xi_list.size());
  for (const auto& j : xi_list) out.push_back(plan.at_from_dft(fd, j));
  return out;
}

}  // namespace modspace
