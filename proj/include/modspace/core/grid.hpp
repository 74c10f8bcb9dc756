// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace modspace {

using cplx = std::complex<double>;

// A point of R^n (n <= 2). Unused trailing coordinates are zero.
using Point = std::array<double, 2>;

// k in Z^n (n <= 2). Unused trailing coordinates are zero.
using LatticeIndex = std::array<int, 2>;

// Periodic sampling lattice on [-L, L)^n with N points per axis.
//
// Physical samples sit at x_j = -L + j dx, frequency samples at
// xi_j = (j - N/2) dxi, j in [0, N). Multi-dimensional samples are stored
// row-major with axis 0 slowest.
struct GridSpec {
  int n = 1;           // spatial dimension, 1 or 2
  int m = 1;           // vector dimension, 1..3
  std::size_t N = 256; // points per axis, power of two >= 16
  double L = 12.0;     // half-width of the box

  void validate() const;

  double dx() const { return 2.0 * L / static_cast<double>(N); }
  double dxi() const;
  double nyquist() const;
  double cell_volume() const;       // dx^n
  double freq_cell_volume() const;  // dxi^n
  std::size_t points() const { return n == 1 ? N : N * N; }

  double axis_coordinate(std::size_t j) const { return -L + static_cast<double>(j) * dx(); }
  double axis_frequency(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(N / 2)) * dxi();
  }
  std::array<std::size_t, 2> unflatten(std::size_t flat) const {
    return n == 1 ? std::array<std::size_t, 2>{flat, 0}
                  : std::array<std::size_t, 2>{flat / N, flat % N};
  }
  std::size_t flatten(std::size_t i0, std::size_t i1) const { return n == 1 ? i0 : i0 * N + i1; }
  Point coordinate(std::size_t flat) const;
  Point frequency(std::size_t flat) const;

  // Frequency lattice index of xi = j * dxi (per axis, j in [-N/2, N/2)).
  // Returns false when the frequency lies outside the lattice.
  bool frequency_index(const LatticeIndex& j, std::size_t& flat) const;

  // Nyquist >= K + sqrt(n) + 2, the margin a window family of truncation K
  // needs. Throws a config error naming the inequality otherwise.
  void require_window_safety(int K) const;

  // Same lattice with twice the points per axis.
  GridSpec refined() const { return GridSpec{n, m, 2 * N, L}; }

  bool same_lattice(const GridSpec& o) const { return n == o.n && N == o.N && L == o.L; }
  bool operator==(const GridSpec& o) const = default;
};

enum class Side { physical, frequency };

// Sampled C^m-valued function, stored component-major.
class VectorField {
 public:
  VectorField() = default;
  VectorField(const GridSpec& grid, Side side);

  // Samples func at every lattice point of the given side.
  static VectorField sample(const GridSpec& grid, Side side,
                            const std::function<void(const Point&, std::span<cplx>)>& func);

  const GridSpec& grid() const { return grid_; }
  Side side() const { return side_; }
  int m() const { return grid_.m; }
  std::size_t count() const { return count_; }

  std::span<cplx> component(int c) { return {data_.data() + c * count_, count_}; }
  std::span<const cplx> component(int c) const { return {data_.data() + c * count_, count_}; }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  cplx& at(int c, std::size_t flat) { return data_[c * count_ + flat]; }
  const cplx& at(int c, std::size_t flat) const { return data_[c * count_ + flat]; }

  bool all_finite() const;
  // Throws a data error naming the first non-finite sample.
  void require_finite() const;
  double max_abs() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(cplx c);
  friend VectorField operator*(cplx c, VectorField f) { return f *= c; }

 private:
  GridSpec grid_;
  Side side_ = Side::physical;
  std::size_t count_ = 0;
  std::vector<cplx> data_;
};

void require_same_grid(const VectorField& a, const VectorField& b, const char* what);

}  // namespace modspace
