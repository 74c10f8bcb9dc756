// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "modspace/core/grid.hpp"

namespace modspace {

// Small (m <= 3) complex matrices and vectors.
using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;
using Vec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, 3, 1>;

// An m x m matrix at every physical lattice point, stored plane-major
// (entry (i, j) is one contiguous plane) so the SIMD kernels can stream it.
class MatrixField {
 public:
  MatrixField() = default;
  explicit MatrixField(const GridSpec& grid);

  static MatrixField identity(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int m() const { return grid_.m; }
  std::size_t count() const { return count_; }

  Mat at(std::size_t x) const;
  void set(std::size_t x, const Mat& a);
  cplx entry(int i, int j, std::size_t x) const { return data_[(i * m() + j) * count_ + x]; }

  std::span<const cplx> planes() const { return data_; }
  std::span<cplx> planes() { return data_; }

 private:
  GridSpec grid_;
  std::size_t count_ = 0;
  std::vector<cplx> data_;
};

// |M(x) f(x)|^2 at every point (M == nullptr means identity).
void pointwise_abs2(const MatrixField* M, const VectorField& f, std::span<double> out);

}  // namespace modspace
