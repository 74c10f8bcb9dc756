// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/core/quadrature.hpp"

#include <cmath>
#include <vector>

#include "modspace/core/matrix_field.hpp"
#include "modspace/error.hpp"
#include "modspace/simd/kernels.hpp"
#include "modspace/weights/matrix_weight.hpp"

namespace modspace {
namespace {

void require_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::parameter, "L^p exponent must lie in [1, inf)");
}

void require_physical(const VectorField& f) {
  if (f.side() != Side::physical) fail(ErrorKind::contract, "L^p norms take physical-side fields");
}

double finish(double sum, const GridSpec& g, double p) {
  return std::pow(sum * g.cell_volume(), 1.0 / p);
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double sum_pow_half(std::span<const double> abs2, double p) {
  if (p == 2.0) return pairwise_sum(abs2);
  std::vector<double> t(abs2.size());
  const double e = 0.5 * p;
  for (std::size_t i = 0; i < abs2.size(); ++i) t[i] = abs2[i] > 0.0 ? std::pow(abs2[i], e) : 0.0;
  return pairwise_sum(t);
}

double lp_norm(const VectorField& f, double p) {
  require_exponent(p);
  require_physical(f);
  std::vector<double> a(f.count());
  pointwise_abs2(nullptr, f, a);
  return finish(sum_pow_half(a, p), f.grid(), p);
}

double weighted_lp_norm(const VectorField& f, const MatrixWeight* W, double p) {
  require_exponent(p);
  require_physical(f);
  if (W == nullptr || W->is_identity()) {
    if (W && !W->grid().same_lattice(f.grid()))
      fail(ErrorKind::contract, "weight and field live on different grids");
    return lp_norm(f, p);
  }
  if (!W->grid().same_lattice(f.grid()) || W->grid().m != f.m())
    fail(ErrorKind::contract, "weight and field live on different grids");
  return transformed_lp_norm(f, *W->power(1.0 / p), p);
}

double transformed_lp_norm(const VectorField& f, const MatrixField& M, double p) {
  require_exponent(p);
  require_physical(f);
  std::vector<double> a(f.count());
  pointwise_abs2(&M, f, a);
  return finish(sum_pow_half(a, p), f.grid(), p);
}

cplx bilinear_pairing(const VectorField& f, const VectorField& g) {
  require_same_grid(f, g, "bilinear_pairing");
  const auto& k = simd::active_kernels();
  cplx s = 0.0;
  for (int c = 0; c < f.m(); ++c) s += k.dot(g.component(c).data(), f.component(c).data(), f.count());
  return s * f.grid().cell_volume();
}

}  // namespace modspace
