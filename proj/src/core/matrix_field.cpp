// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/core/matrix_field.hpp"

#include "modspace/error.hpp"
#include "modspace/simd/kernels.hpp"

namespace modspace {

MatrixField::MatrixField(const GridSpec& grid)
    : grid_(grid), count_(grid.points()),
      data_(static_cast<std::size_t>(grid.m * grid.m) * grid.points()) {}

MatrixField MatrixField::identity(const GridSpec& grid) {
  MatrixField f(grid);
  for (int i = 0; i < grid.m; ++i) {
    auto* plane = f.data_.data() + (i * grid.m + i) * f.count_;
    std::fill(plane, plane + f.count_, cplx{1.0, 0.0});
  }
  return f;
}

Mat MatrixField::at(std::size_t x) const {
  Mat a(m(), m());
  for (int i = 0; i < m(); ++i)
    for (int j = 0; j < m(); ++j) a(i, j) = entry(i, j, x);
  return a;
}

void MatrixField::set(std::size_t x, const Mat& a) {
  for (int i = 0; i < m(); ++i)
    for (int j = 0; j < m(); ++j) data_[(i * m() + j) * count_ + x] = a(i, j);
}

void pointwise_abs2(const MatrixField* M, const VectorField& f, std::span<double> out) {
  if (out.size() != f.count()) fail(ErrorKind::contract, "pointwise_abs2: output size mismatch");
  const auto& k = simd::active_kernels();
  if (M == nullptr) {
    k.abs2(f.data().data(), f.m(), out.data(), f.count());
    return;
  }
  if (!M->grid().same_lattice(f.grid()) || M->m() != f.m())
    fail(ErrorKind::contract, "matrix field and vector field live on different grids");
  k.matvec_abs2(M->planes().data(), f.data().data(), f.m(), out.data(), f.count());
}

}  // namespace modspace
