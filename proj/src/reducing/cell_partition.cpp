// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/reducing/cell_partition.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "modspace/error.hpp"
#include "modspace/freq/bracket.hpp"

namespace modspace {

const char* to_string(RConvention c) { return c == RConvention::paper ? "paper" : "unit"; }

RConvention r_convention_from_string(const std::string& s, const std::string& path) {
  if (s == "paper") return RConvention::paper;
  if (s == "unit") return RConvention::unit;
  fail(ErrorKind::config, path + ": expected 'paper' or 'unit', got '" + s + "'");
}

CellPartition CellPartition::build(const GridSpec& grid, const LatticeIndex& k, double a, RConvention conv) {
  grid.validate();
  const int n = grid.n;
  if (!(a >= 0.5 * std::sqrt(static_cast<double>(n))) || !std::isfinite(a))
    fail(ErrorKind::parameter, "cell partition: scale a must satisfy a >= sqrt(n)/2");
  CellPartition p;
  p.grid_ = grid;
  p.k_ = k;
  p.a_ = a;
  p.conv_ = conv;
  p.r_ = conv == RConvention::paper ? bracket(k, n, BracketMode::l1_lattice) : 1.0;
  const double scale = a * p.r_;

  std::map<LatticeIndex, std::size_t> index;
  p.cell_of_.resize(grid.points());
  for (std::size_t x = 0; x < grid.points(); ++x) {
    const Point c = grid.coordinate(x);
    LatticeIndex l{0, 0};
    for (int d = 0; d < n; ++d) l[d] = static_cast<int>(std::floor(c[d] * scale));
    auto [it, inserted] = index.emplace(l, p.ell_.size());
    if (inserted) {
      p.ell_.push_back(l);
      p.members_.emplace_back();
    }
    p.members_[it->second].push_back(x);
    p.cell_of_[x] = it->second;
  }
  p.clipped_.resize(p.ell_.size());
  const std::size_t need = std::size_t{1} << n;
  for (std::size_t cell = 0; cell < p.ell_.size(); ++cell) {
    bool clipped = false;
    for (int d = 0; d < n; ++d) {
      const double lo = p.ell_[cell][d] / scale, hi = (p.ell_[cell][d] + 1) / scale;
      clipped = clipped || lo < -grid.L || hi > grid.L;
    }
    p.clipped_[cell] = clipped;
    if (!clipped && p.members_[cell].size() < need) {
      std::ostringstream os;
      os << "resolution error: cell side " << 1.0 / scale << " holds " << p.members_[cell].size()
         << " gridpoints (< 2^n = " << need << ") at k = (" << k[0];
      if (n == 2) os << ", " << k[1];
      os << "); increase grid.N or decrease window.K";
      fail(ErrorKind::resolution, os.str());
    }
  }
  return p;
}

Point CellPartition::anchor(std::size_t cell) const {
  const double s = side();
  return {ell_[cell][0] * s, grid_.n == 2 ? ell_[cell][1] * s : 0.0};
}

bool CellPartition::same_cells(const CellPartition& o) const {
  return grid_ == o.grid_ && cell_of_ == o.cell_of_ && ell_ == o.ell_;
}

}  // namespace modspace
