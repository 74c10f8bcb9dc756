// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <span>

#include "modspace/core/grid.hpp"

namespace modspace {

class MatrixWeight;
class MatrixField;

// Order-fixed pairwise sum; the result does not depend on thread count.
double pairwise_sum(std::span<const double> v);

// sum_x |v(x)|^{p/2} for squared magnitudes v, pairwise-summed.
double sum_pow_half(std::span<const double> abs2, double p);

// (dx^n sum_x |f(x)|^p)^{1/p}.
double lp_norm(const VectorField& f, double p);

// (dx^n sum_x |W^{1/p}(x) f(x)|^p)^{1/p}; W == nullptr means identity.
double weighted_lp_norm(const VectorField& f, const MatrixWeight* W, double p);

// Same, with an explicit matrix field M(x) applied in place of W^{1/p}.
double transformed_lp_norm(const VectorField& f, const MatrixField& M, double p);

// dx^n sum_x sum_i g_i(x) f_i(x), without conjugation.
cplx bilinear_pairing(const VectorField& f, const VectorField& g);

}  // namespace modspace
