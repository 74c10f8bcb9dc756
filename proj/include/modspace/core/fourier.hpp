// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <span>

#include "modspace/core/grid.hpp"

namespace modspace {

enum class Direction { forward, inverse };

// Riemann-sum Fourier transform with the (2 pi)^{-n/2} normalisation:
//   F f(xi_k) = (2 pi)^{-n/2} dx^n sum_x e^{-i x . xi_k} f(x).
// The inverse uses dxi^n and is the exact discrete inverse of forward.
VectorField fourier_transform(const VectorField& f, Direction dir);

// Per-component building blocks, in place over N^n samples.
void forward_samples(const GridSpec& grid, std::span<cplx> samples);
void inverse_samples(const GridSpec& grid, std::span<cplx> samples);

// Raw unnormalised DFT over the lattice (sign -1 forward, +1 backward).
void raw_dft(const GridSpec& grid, std::span<cplx> samples, int sign);

}  // namespace modspace
