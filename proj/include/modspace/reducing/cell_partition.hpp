// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <span>
#include <string>
#include <vector>

#include "modspace/core/grid.hpp"

namespace modspace {

// paper: r_k = <k> (l1 bracket); unit: r_k = 1.
enum class RConvention { paper, unit };

const char* to_string(RConvention c);
RConvention r_convention_from_string(const std::string& s, const std::string& path = "params.r_convention");

// Cells Q(k, l) = (a r_k)^{-1} (l + [0, 1)^n) clipped to the box.
class CellPartition {
 public:
  // Throws ErrorKind::parameter for a < sqrt(n)/2 and ErrorKind::resolution
  // when an unclipped cell holds fewer than 2^n gridpoints.
  static CellPartition build(const GridSpec& grid, const LatticeIndex& k, double a, RConvention conv);

  const GridSpec& grid() const { return grid_; }
  const LatticeIndex& k() const { return k_; }
  double a() const { return a_; }
  RConvention convention() const { return conv_; }
  double r() const { return r_; }
  double side() const { return 1.0 / (a_ * r_); }

  std::size_t size() const { return ell_.size(); }
  const LatticeIndex& ell(std::size_t cell) const { return ell_[cell]; }
  Point anchor(std::size_t cell) const;
  bool clipped(std::size_t cell) const { return clipped_[cell]; }
  std::span<const std::size_t> members(std::size_t cell) const { return members_[cell]; }
  std::size_t cell_of(std::size_t point) const { return cell_of_[point]; }

  bool same_cells(const CellPartition& o) const;

 private:
  GridSpec grid_;
  LatticeIndex k_{0, 0};
  double a_ = 1.0;
  RConvention conv_ = RConvention::paper;
  double r_ = 1.0;
  std::vector<LatticeIndex> ell_;
  std::vector<bool> clipped_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t> cell_of_;
};

}  // namespace modspace
