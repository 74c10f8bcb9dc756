// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "modspace/weights/matrix_weight.hpp"

namespace modspace {

// Axis-aligned cube in index space: len points per axis from start.
struct Cube {
  std::array<std::size_t, 2> start{0, 0};
  std::size_t len = 0;
  bool operator==(const Cube&) const = default;
};

// Finite family of lattice cubes whose concentric doubles fit in the box.
class CubeFamily {
 public:
  // Side lengths min_len * 2^j points (capped by max_len, 0 = no cap),
  // starts on multiples of len / 2. Includes the cubes centred at x = 0.
  static CubeFamily shifted_dyadic(const GridSpec& grid, std::size_t min_len = 4, std::size_t max_len = 0);
  // Throws ErrorKind::resolution for cubes under 4^n points and
  // ErrorKind::parameter when 2Q leaves the box.
  static CubeFamily from_cubes(const GridSpec& grid, std::vector<Cube> cubes);

  const GridSpec& grid() const { return grid_; }
  std::span<const Cube> cubes() const { return cubes_; }
  std::size_t size() const { return cubes_.size(); }

  Cube doubled(const Cube& q) const { return {{q.start[0] - q.len / 2, grid_.n == 2 ? q.start[1] - q.len / 2 : 0}, 2 * q.len}; }
  std::vector<std::size_t> points(const Cube& q) const;
  Point center(const Cube& q) const;
  double side(const Cube& q) const { return static_cast<double>(q.len) * grid_.dx(); }

 private:
  GridSpec grid_;
  std::vector<Cube> cubes_;
};

struct ApEstimate {
  double value = 0.0;  // lower bound for the characteristic
  Cube worst;
};

// max_Q avg_x (avg_y |W^{1/p}(x) W^{-1/p}(y)|^{p'})^{p/p'}, p in (1, inf).
ApEstimate matrix_ap_characteristic(const MatrixWeight& W, double p, const CubeFamily& cubes);

// max_Q avg w (avg w^{1-p'})^{p-1}; p = 1 gives max_Q avg w / min_Q w.
ApEstimate scalar_ap_characteristic(std::span<const double> w, const CubeFamily& cubes, double p);

struct DirectionOptions {
  int random_count = 32;
  std::uint64_t seed = 20260;
  bool eigenvectors = true;  // add eigenvectors of W at every cube centre
};

struct DoublingEstimate {
  double C = 0.0;
  double beta = 0.0;  // log2 C
  Cube worst;
  Vec direction;
  std::size_t directions_used = 0;
};

// max over (Q, z) of sum_{2Q} |W^{1/p} z|^p / sum_Q |W^{1/p} z|^p.
DoublingEstimate doubling_exponent(const MatrixWeight& W, double p, const CubeFamily& cubes,
                                   const DirectionOptions& opts = {});

// Seeded unit vectors in C^m (complex Gaussian, normalised).
std::vector<Vec> random_unit_vectors(int m, int count, std::uint64_t seed);

}  // namespace modspace
