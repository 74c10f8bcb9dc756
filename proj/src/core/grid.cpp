// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/core/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modspace/error.hpp"

namespace modspace {

void GridSpec::validate() const {
  if (n != 1 && n != 2) fail(ErrorKind::config, "grid.n must be 1 or 2");
  if (m < 1 || m > 3) fail(ErrorKind::config, "grid.m must be in 1..3");
  if (N < 16 || (N & (N - 1)) != 0)
    fail(ErrorKind::config, "grid.N must be a power of two >= 16 (got " + std::to_string(N) + ")");
  if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorKind::config, "grid.L must be positive");
}

double GridSpec::dxi() const { return std::numbers::pi / L; }

double GridSpec::nyquist() const {
  return std::numbers::pi * static_cast<double>(N) / (2.0 * L);
}

double GridSpec::cell_volume() const { return n == 1 ? dx() : dx() * dx(); }

double GridSpec::freq_cell_volume() const { return n == 1 ? dxi() : dxi() * dxi(); }

Point GridSpec::coordinate(std::size_t flat) const {
  const auto [i0, i1] = unflatten(flat);
  return n == 1 ? Point{axis_coordinate(i0), 0.0} : Point{axis_coordinate(i0), axis_coordinate(i1)};
}

Point GridSpec::frequency(std::size_t flat) const {
  const auto [i0, i1] = unflatten(flat);
  return n == 1 ? Point{axis_frequency(i0), 0.0} : Point{axis_frequency(i0), axis_frequency(i1)};
}

bool GridSpec::frequency_index(const LatticeIndex& j, std::size_t& flat) const {
  const long half = static_cast<long>(N / 2);
  std::size_t idx[2] = {0, 0};
  for (int a = 0; a < n; ++a) {
    const long s = static_cast<long>(j[a]) + half;
    if (s < 0 || s >= static_cast<long>(N)) return false;
    idx[a] = static_cast<std::size_t>(s);
  }
  flat = flatten(idx[0], idx[1]);
  return true;
}

void GridSpec::require_window_safety(int K) const {
  const double need = K + std::sqrt(static_cast<double>(n)) + 2.0;
  if (nyquist() < need) {
    std::ostringstream os;
    os << "frequency safety violated: Nyquist pi*N/(2L) = " << nyquist()
       << " < K + sqrt(n) + 2 = " << need << " (increase grid.N or decrease window.K)";
    fail(ErrorKind::config, os.str());
  }
}

VectorField::VectorField(const GridSpec& grid, Side side)
    : grid_(grid), side_(side), count_(grid.points()),
      data_(static_cast<std::size_t>(grid.m) * grid.points()) {}

VectorField VectorField::sample(const GridSpec& grid, Side side,
                                const std::function<void(const Point&, std::span<cplx>)>& func) {
  VectorField f(grid, side);
  std::array<cplx, 3> buf{};
  for (std::size_t x = 0; x < f.count_; ++x) {
    const Point p = side == Side::physical ? grid.coordinate(x) : grid.frequency(x);
    buf.fill(cplx{});
    func(p, std::span<cplx>(buf.data(), static_cast<std::size_t>(grid.m)));
    for (int c = 0; c < grid.m; ++c) f.at(c, x) = buf[c];
  }
  return f;
}

bool VectorField::all_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void VectorField::require_finite() const {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i].real()) || !std::isfinite(data_[i].imag())) {
      fail(ErrorKind::data, "non-finite sample at component " + std::to_string(i / count_) +
                                ", point " + std::to_string(i % count_));
    }
  }
}

double VectorField::max_abs() const {
  double mx = 0.0;
  for (const cplx& z : data_) mx = std::max(mx, std::abs(z));
  return mx;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_grid(*this, o, "VectorField +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require_same_grid(*this, o, "VectorField -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

VectorField& VectorField::operator*=(cplx c) {
  for (cplx& z : data_) z *= c;
  return *this;
}

void require_same_grid(const VectorField& a, const VectorField& b, const char* what) {
  if (!(a.grid() == b.grid()) || a.side() != b.side())
    fail(ErrorKind::contract, std::string(what) + ": fields live on different grids or sides");
}

}  // namespace modspace
