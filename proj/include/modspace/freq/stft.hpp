// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "modspace/core/grid.hpp"

namespace modspace {

// Real analysis window g(x).
using StftWindow = std::function<double(const Point&)>;

// pi^{-n/4} exp(-|x|^2 / 2), unit L^2 norm.
StftWindow gaussian_window(int n);

// Precomputed DFT of the periodised window samples, reusable across xi.
class StftPlan {
 public:
  StftPlan(const GridSpec& grid, const StftWindow& g);
  const GridSpec& grid() const { return grid_; }

  // V_g f(x, xi) = dx^n sum_y e^{-i y.xi} g(y - x) f(y) for every lattice x,
  // at xi = j dxi. Throws ErrorKind::parameter when xi is off the lattice
  // (beyond Nyquist). Output is a physical-side field over x.
  VectorField at(const VectorField& f, const LatticeIndex& j) const;

  // Same with the raw DFT of f already computed (component-major).
  VectorField at_from_dft(std::span<const cplx> f_dft, const LatticeIndex& j) const;

  // Raw DFT of every component of f.
  std::vector<cplx> dft(const VectorField& f) const;

 private:
  GridSpec grid_;
  std::vector<cplx> g_dft_;
};

std::vector<VectorField> stft(const VectorField& f, const StftWindow& g, std::span<const LatticeIndex> xi_list);

}  // namespace modspace
