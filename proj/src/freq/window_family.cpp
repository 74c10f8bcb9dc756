// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/freq/window_family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modspace/core/io.hpp"
#include "modspace/error.hpp"
#include "modspace/freq/bracket.hpp"
#include "modspace/parallel.hpp"

namespace modspace {
namespace {

double transition(double t, WindowProfile profile) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  if (profile == WindowProfile::smooth_bump) return std::exp(1.0 - 1.0 / (1.0 - t * t));
  return 0.5 * (1.0 + std::cos(std::numbers::pi * t));
}

double norm2(const Point& v, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += v[d] * v[d];
  return std::sqrt(s);
}

double rho_sum(const Point& xi, int n, WindowProfile profile) {
  const int lo0 = static_cast<int>(std::floor(xi[0])) - 2;
  const int lo1 = n == 2 ? static_cast<int>(std::floor(xi[1])) - 2 : 0;
  double s = 0.0;
  for (int a = lo0; a <= lo0 + 5; ++a) {
    if (n == 1) {
      s += window_rho({xi[0] - a, 0.0}, n, profile);
      continue;
    }
    for (int b = lo1; b <= lo1 + 5; ++b) s += window_rho({xi[0] - a, xi[1] - b}, n, profile);
  }
  return s;
}

}  // namespace

const char* to_string(WindowProfile p) {
  return p == WindowProfile::smooth_bump ? "smooth-bump" : "raised-cosine";
}

WindowProfile window_profile_from_string(const std::string& s) {
  if (s == "smooth-bump") return WindowProfile::smooth_bump;
  if (s == "raised-cosine") return WindowProfile::raised_cosine;
  fail(ErrorKind::config, "window.profile: expected 'smooth-bump' or 'raised-cosine', got '" + s + "'");
}

double window_rho(const Point& xi, int n, WindowProfile profile) {
  const double r = norm2(xi, n);
  const double half = 0.5 * std::sqrt(static_cast<double>(n));
  return transition((r - half) / half, profile);
}

double window_phi(const LatticeIndex& k, const Point& xi, int n, WindowProfile profile) {
  const double num = window_rho({xi[0] - k[0], n == 2 ? xi[1] - k[1] : 0.0}, n, profile);
  if (num == 0.0) return 0.0;
  return num / rho_sum(xi, n, profile);
}

WindowFamily WindowFamily::build(const GridSpec& grid, int K, WindowProfile profile) {
  grid.validate();
  if (K < 1) fail(ErrorKind::config, "window.K: must be >= 1");
  grid.require_window_safety(K);
  WindowFamily fam;
  fam.grid_ = grid;
  fam.K_ = K;
  fam.profile_ = profile;
  fam.indices_ = lattice_cube(grid.n, K);
  fam.pieces_.resize(fam.indices_.size());
  fam.zeroed_.assign(fam.indices_.size(), false);

  const int n = grid.n;
  const double dxi = grid.dxi();
  const double radius = std::sqrt(static_cast<double>(n));
  parallel_for(fam.indices_.size(), [&](std::size_t s) {
    const LatticeIndex& k = fam.indices_[s];
    WindowPiece& piece = fam.pieces_[s];
    int lo[2] = {0, 0}, hi[2] = {0, 0};
    for (int d = 0; d < n; ++d) {
      lo[d] = static_cast<int>(std::floor((k[d] - radius) / dxi)) - 1;
      hi[d] = static_cast<int>(std::ceil((k[d] + radius) / dxi)) + 1;
    }
    for (int a = lo[0]; a <= hi[0]; ++a)
      for (int b = lo[1]; b <= hi[1]; ++b) {
        std::size_t flat;
        if (!grid.frequency_index({a, b}, flat)) continue;
        const Point xi = grid.frequency(flat);
        const double v = window_phi(k, xi, n, profile);
        if (v == 0.0) continue;
        piece.flat.push_back(static_cast<std::uint32_t>(flat));
        piece.value.push_back(v);
      }
  });

  const WindowValidation report = validate_window_family(fam);
  if (!report.pass())
    fail(ErrorKind::numerical, "window family construction failed its own validation (construction bug)");
  fam.c_ = report.c;
  fam.C_beta_ = report.C_beta;
  return fam;
}

bool WindowFamily::contains(const LatticeIndex& k) const {
  for (int d = 0; d < grid_.n; ++d)
    if (k[d] < -K_ || k[d] > K_) return false;
  return grid_.n == 2 || k[1] == 0;
}

std::size_t WindowFamily::slot(const LatticeIndex& k) const {
  if (!contains(k))
    fail(ErrorKind::parameter, "index error: k = (" + std::to_string(k[0]) +
                                   (grid_.n == 2 ? ", " + std::to_string(k[1]) : std::string{}) +
                                   ") lies outside the truncation |k|_inf <= " + std::to_string(K_));
  const std::size_t side = 2 * K_ + 1;
  const std::size_t a = static_cast<std::size_t>(k[0] + K_);
  return grid_.n == 1 ? a : a * side + static_cast<std::size_t>(k[1] + K_);
}

double WindowFamily::evaluate(const LatticeIndex& k, const Point& xi) const {
  if (zeroed_[slot(k)]) return 0.0;
  return window_phi(k, xi, grid_.n, profile_);
}

WindowFamily WindowFamily::with_zeroed(const LatticeIndex& k) const {
  WindowFamily out = *this;
  const std::size_t s = slot(k);
  out.zeroed_[s] = true;
  std::fill(out.pieces_[s].value.begin(), out.pieces_[s].value.end(), 0.0);
  return out;
}

WindowValidation validate_window_family(const WindowFamily& fam) {
  const GridSpec& g = fam.grid_;
  const int n = g.n;
  const double radius = std::sqrt(static_cast<double>(n));
  WindowValidation r;

  // (b) and (c) on the sampled lattice values.
  std::vector<double> total(g.points(), 0.0);
  for (std::size_t s = 0; s < fam.indices_.size(); ++s) {
    const auto& piece = fam.pieces_[s];
    const auto& k = fam.indices_[s];
    for (std::size_t i = 0; i < piece.flat.size(); ++i) {
      const Point xi = g.frequency(piece.flat[i]);
      double d2 = 0.0;
      for (int d = 0; d < n; ++d) d2 += (xi[d] - k[d]) * (xi[d] - k[d]);
      if (std::sqrt(d2) > radius) r.support_violation = std::max(r.support_violation, std::abs(piece.value[i]));
      total[piece.flat[i]] += piece.value[i];
    }
  }
  const double safe = fam.K_ - radius;
  for (std::size_t x = 0; x < g.points(); ++x) {
    const Point xi = g.frequency(x);
    bool inside = true;
    for (int d = 0; d < n; ++d) inside = inside && std::abs(xi[d]) <= safe;
    if (inside) r.partition_defect = std::max(r.partition_defect, std::abs(total[x] - 1.0));
  }
  // (c) again on a dyadic grid of step 1/P, which contains every k.
  {
    const int P = n == 1 ? 16 : 8;
    const int span = static_cast<int>(std::floor(safe * P));
    const int count = 2 * span + 1;
    std::vector<double> defect(count, 0.0);
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t a) {
      const double x0 = (static_cast<int>(a) - span) / static_cast<double>(P);
      double worst = 0.0;
      for (int b = (n == 1 ? 0 : -span); b <= (n == 1 ? 0 : span); ++b) {
        const Point xi{x0, b / static_cast<double>(P)};
        double sum = 0.0;
        const int lo0 = static_cast<int>(std::floor(xi[0])) - 1, lo1 = static_cast<int>(std::floor(xi[1])) - 1;
        for (int i = lo0; i <= lo0 + 3; ++i)
          for (int j = (n == 1 ? 0 : lo1); j <= (n == 1 ? 0 : lo1 + 3); ++j) {
            const LatticeIndex k{i, j};
            if (fam.contains(k)) sum += fam.evaluate(k, xi);
          }
        worst = std::max(worst, std::abs(sum - 1.0));
      }
      defect[a] = worst;
    });
    for (double d : defect) r.partition_defect = std::max(r.partition_defect, d);
  }
  r.support = r.support_violation == 0.0;
  r.partition = r.partition_defect <= 1e-12;

  // (a) and (d) on a fine dyadic grid; step h = 1/M keeps k exactly on it.
  const int M = n == 1 ? 512 : 32;
  const double h = 1.0 / M;
  const int reach = static_cast<int>(std::ceil(radius * M)) + 2;
  const int side = 2 * reach + 1;
  struct PerK {
    double c = 0.0;
    std::array<double, 3> bound{};
  };
  std::vector<PerK> per(fam.indices_.size());
  parallel_for(fam.indices_.size(), [&](std::size_t s) {
    const LatticeIndex& k = fam.indices_[s];
    const bool zero = fam.zeroed_[s];
    std::vector<double> v(n == 1 ? side : side * side, 0.0);
    auto at = [&](int i, int j) -> double& { return v[n == 1 ? i : i * side + j]; };
    double cmin = 1.0;
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < (n == 1 ? 1 : side); ++j) {
        const Point off{(i - reach) * h, n == 2 ? (j - reach) * h : 0.0};
        const Point xi{k[0] + off[0], n == 2 ? k[1] + off[1] : 0.0};
        const double val = zero ? 0.0 : window_phi(k, xi, n, fam.profile_);
        at(i, j) = val;
        bool in_cube = true;
        for (int d = 0; d < n; ++d) in_cube = in_cube && off[d] >= -0.5 && off[d] < 0.5;
        if (in_cube) cmin = std::min(cmin, val);
      }
    PerK out;
    out.c = cmin;
    for (int i = 1; i + 1 < side; ++i)
      for (int j = (n == 1 ? 0 : 1); j < (n == 1 ? 1 : side - 1); ++j) {
        out.bound[0] = std::max(out.bound[0], std::abs(at(i, j)));
        const double d0 = (at(i + 1, j) - at(i - 1, j)) / (2 * h);
        const double dd0 = (at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)) / (h * h);
        out.bound[1] = std::max(out.bound[1], std::abs(d0));
        out.bound[2] = std::max(out.bound[2], std::abs(dd0));
        if (n == 2) {
          const double d1 = (at(i, j + 1) - at(i, j - 1)) / (2 * h);
          const double dd1 = (at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)) / (h * h);
          const double mixed = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4 * h * h);
          out.bound[1] = std::max(out.bound[1], std::abs(d1));
          out.bound[2] = std::max({out.bound[2], std::abs(dd1), std::abs(mixed)});
        }
      }
    per[s] = out;
  });
  r.c = 1.0;
  std::array<double, 3> lo{1e300, 1e300, 1e300};
  for (const auto& p : per) {
    r.c = std::min(r.c, p.c);
    for (int a = 0; a < 3; ++a) {
      r.C_beta[a] = std::max(r.C_beta[a], p.bound[a]);
      lo[a] = std::min(lo[a], p.bound[a]);
    }
  }
  for (int a = 0; a < 3; ++a)
    if (r.C_beta[a] > 0.0) r.derivative_spread = std::max(r.derivative_spread, (r.C_beta[a] - lo[a]) / r.C_beta[a]);
  r.lower_bound = r.c > 0.0;
  r.derivatives = std::isfinite(r.C_beta[2]) && r.derivative_spread <= 1e-6;
  return r;
}

void write_window_family(const std::string& path, const WindowFamily& fam) {
  const GridSpec& g = fam.grid();
  std::vector<cplx> payload(fam.indices().size() * g.points(), 0.0);
  std::vector<json> ks;
  for (std::size_t s = 0; s < fam.indices().size(); ++s) {
    const auto& k = fam.indices()[s];
    ks.push_back(g.n == 1 ? json::array({k[0]}) : json::array({k[0], k[1]}));
    const auto& piece = fam.piece(k);
    for (std::size_t i = 0; i < piece.flat.size(); ++i) payload[s * g.points() + piece.flat[i]] = piece.value[i];
  }
  json h = grid_to_json(g);
  h["kind"] = "window-family";
  h["K"] = fam.K();
  h["profile"] = to_string(fam.profile());
  h["c"] = fam.c();
  h["C_beta"] = fam.C_beta();
  h["k"] = ks;
  write_blob(path, h, payload);
}

}  // namespace modspace
