// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

// Brute-force reference computations. Nothing here touches FFTW or the SIMD
// kernel table: transforms are dense O(N^2) sums written from the
// definitions.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "modspace/core/grid.hpp"
#include "modspace/freq/window_family.hpp"

namespace oracle {

using modspace::cplx;
using modspace::GridSpec;
using modspace::Point;

inline double dot(const Point& a, const Point& b, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += a[d] * b[d];
  return s;
}

// (2 pi)^{-n/2} dx^n sum_x e^{-i x.xi} f(x) at every lattice frequency.
inline std::vector<cplx> dense_forward(const GridSpec& g, const std::vector<cplx>& f) {
  const std::size_t P = g.points();
  std::vector<cplx> out(P);
  const double c = std::pow(2.0 * std::numbers::pi, -0.5 * g.n) * std::pow(g.dx(), g.n);
  for (std::size_t k = 0; k < P; ++k) {
    const Point xi = g.frequency(k);
    cplx s = 0.0;
    for (std::size_t x = 0; x < P; ++x) s += std::polar(1.0, -dot(g.coordinate(x), xi, g.n)) * f[x];
    out[k] = c * s;
  }
  return out;
}

inline std::vector<cplx> dense_inverse(const GridSpec& g, const std::vector<cplx>& F) {
  const std::size_t P = g.points();
  std::vector<cplx> out(P);
  const double c = std::pow(2.0 * std::numbers::pi, -0.5 * g.n) * std::pow(g.dxi(), g.n);
  for (std::size_t x = 0; x < P; ++x) {
    const Point pt = g.coordinate(x);
    cplx s = 0.0;
    for (std::size_t k = 0; k < P; ++k) s += std::polar(1.0, dot(pt, g.frequency(k), g.n)) * F[k];
    out[x] = c * s;
  }
  return out;
}

// V_g f(x, xi) = dx^n sum_y e^{-i y.xi} g(y - x) f(y), with y - x wrapped
// into the periodic box.
template <class Window>
inline cplx brute_stft(const GridSpec& g, const std::vector<cplx>& f, const Window& w, std::size_t x,
                       const Point& xi) {
  const Point px = g.coordinate(x);
  cplx s = 0.0;
  for (std::size_t y = 0; y < g.points(); ++y) {
    const Point py = g.coordinate(y);
    Point d{0.0, 0.0};
    for (int a = 0; a < g.n; ++a) {
      d[a] = py[a] - px[a];
      if (d[a] >= g.L) d[a] -= 2 * g.L;
      if (d[a] < -g.L) d[a] += 2 * g.L;
    }
    s += std::polar(1.0, -dot(py, xi, g.n)) * w(d) * f[y];
  }
  return s * std::pow(g.dx(), g.n);
}

// Scalar modulation norm with W = I from the dense transforms and the
// closed-form window formula.
inline double dense_modulation_norm(const GridSpec& g, const std::vector<cplx>& f, int K,
                                    modspace::WindowProfile profile, double s, double p, double q) {
  const auto F = dense_forward(g, f);
  double total = 0.0;
  for (int a = -K; a <= K; ++a)
    for (int b = (g.n == 2 ? -K : 0); b <= (g.n == 2 ? K : 0); ++b) {
      const modspace::LatticeIndex k{a, b};
      std::vector<cplx> G(F.size());
      for (std::size_t i = 0; i < F.size(); ++i) G[i] = F[i] * modspace::window_phi(k, g.frequency(i), g.n, profile);
      const auto piece = dense_inverse(g, G);
      double acc = 0.0;
      for (const cplx& v : piece) acc += std::pow(std::abs(v), p);
      const double lp = std::pow(acc * std::pow(g.dx(), g.n), 1.0 / p);
      const double br = std::sqrt(1.0 + std::pow(std::abs(a) + std::abs(b), 2.0));
      total += std::pow(std::pow(br, s) * lp, q);
    }
  return std::pow(total, 1.0 / q);
}

inline std::vector<cplx> random_samples(std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> v(count);
  for (auto& z : v) z = {gauss(rng), gauss(rng)};
  return v;
}

}  // namespace oracle
