// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "modspace/reducing/cell_partition.hpp"
#include "modspace/weights/matrix_weight.hpp"

namespace modspace {

enum class ReducingMethod { moment, mvee };

const char* to_string(ReducingMethod m);
ReducingMethod reducing_method_from_string(const std::string& s, const std::string& path = "params.reducing_method");
// moment for p = 2 (exact there), mvee otherwise.
ReducingMethod default_reducing_method(double p);

struct MveeOptions {
  int directions = 128;  // sampled unit vectors (at least 64)
  double tolerance = 1e-6;
  int max_iterations = 10000;
  std::uint64_t seed = 1729;
};

// rho_Q(z) = (avg_Q |W^{1/p}(x) z|^p)^{1/p}, with root = W^{1/p}.
double cell_average_norm(const MatrixField& root, std::span<const std::size_t> cell, double p, const Vec& z);

// One reducing operator of order p for the cell's points.
Mat reducing_operator(const MatrixWeight& W, double p, std::span<const std::size_t> cell, ReducingMethod method,
                      const MveeOptions& opts = {});

// Complex minimum-volume enclosing ellipsoid {z : z^* X^{-1} z <= m} of the
// points, solved by barrier Newton steps to a log-volume gap of `tolerance`.
// Returns X; throws ErrorKind::numerical when it does not converge.
Mat mvee_shape(std::span<const Vec> points, double tolerance, int max_iterations);

// HPD matrices {A_Q} over one partition.
class ReducingOperatorSet {
 public:
  static ReducingOperatorSet build(const MatrixWeight& W, double p, const CellPartition& partition,
                                   ReducingMethod method, const MveeOptions& opts = {});
  static ReducingOperatorSet identity(const CellPartition& partition, double p);

  const CellPartition& partition() const { return *partition_; }
  ReducingMethod method() const { return method_; }
  double p() const { return p_; }
  std::size_t size() const { return ops_.size(); }
  const Mat& op(std::size_t cell) const { return ops_[cell]; }

  // A_{Q(x)} at every gridpoint, plane-major.
  const MatrixField& field() const { return *field_; }

  // A_Q^{-T} per cell: the dual-side operators for the bilinear pairing.
  ReducingOperatorSet inverse_transpose() const;
  // A_Q^{-1} per cell.
  ReducingOperatorSet inverse() const;
  // c_Q A_Q with one factor per cell.
  ReducingOperatorSet scaled(double c) const;

 private:
  ReducingOperatorSet with_ops(std::vector<Mat> ops) const;

  std::shared_ptr<const CellPartition> partition_;
  ReducingMethod method_ = ReducingMethod::moment;
  double p_ = 2.0;
  std::vector<Mat> ops_;
  std::shared_ptr<const MatrixField> field_;
};

// (dx^n sum_x |A_{Q(x)} f(x)|^p)^{1/p}.
double averaged_lp_norm(const VectorField& f, const ReducingOperatorSet& ops, double p);

// Anchors, cell sides and per-cell row-major matrices behind a JSON header.
void write_reducing_set(const std::string& path, const ReducingOperatorSet& ops);

}  // namespace modspace
