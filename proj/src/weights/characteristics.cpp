// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/weights/characteristics.hpp"

#include <cmath>
#include <random>
#include <set>

#include "modspace/error.hpp"
#include "modspace/parallel.hpp"
#include "modspace/weights/hermitian.hpp"

namespace modspace {
namespace {

std::size_t required_len(const GridSpec&) { return 4; }

template <class Fn>
void for_points(const GridSpec& g, const Cube& q, Fn&& fn) {
  if (g.n == 1) {
    for (std::size_t i = 0; i < q.len; ++i) fn(q.start[0] + i);
  } else {
    for (std::size_t i = 0; i < q.len; ++i)
      for (std::size_t j = 0; j < q.len; ++j) fn(g.flatten(q.start[0] + i, q.start[1] + j));
  }
}

// Index of the largest slot; ties keep the earliest cube.
std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

void require_exponent(double p, bool allow_one) {
  if (!std::isfinite(p) || p < 1.0 || (!allow_one && p == 1.0))
    fail(ErrorKind::parameter, allow_one ? "A_p exponent must lie in [1, inf)" : "A_p exponent must lie in (1, inf)");
}

}  // namespace

CubeFamily CubeFamily::shifted_dyadic(const GridSpec& grid, std::size_t min_len, std::size_t max_len) {
  grid.validate();
  if (min_len < 4 || (min_len & (min_len - 1)) != 0)
    fail(ErrorKind::resolution, "cube family: minimum side must be a power of two >= 4 points");
  std::vector<Cube> cubes;
  for (std::size_t len = min_len; 2 * len <= grid.N && (max_len == 0 || len <= max_len); len *= 2) {
    const std::size_t step = len / 2;
    std::vector<std::size_t> starts;
    for (std::size_t s = step; s + len + step <= grid.N; s += step) starts.push_back(s);
    if (grid.n == 1) {
      for (auto s : starts) cubes.push_back({{s, 0}, len});
    } else {
      for (auto s0 : starts)
        for (auto s1 : starts) cubes.push_back({{s0, s1}, len});
    }
  }
  return from_cubes(grid, std::move(cubes));
}

CubeFamily CubeFamily::from_cubes(const GridSpec& grid, std::vector<Cube> cubes) {
  for (const Cube& q : cubes) {
    if (q.len < required_len(grid))
      fail(ErrorKind::resolution, "cube family: every cube needs at least 4^n gridpoints");
    if (q.len % 2 != 0) fail(ErrorKind::parameter, "cube family: side must be an even number of points");
    for (int d = 0; d < grid.n; ++d)
      if (q.start[d] < q.len / 2 || q.start[d] + q.len + q.len / 2 > grid.N)
        fail(ErrorKind::parameter, "cube family: doubled cube leaves the box");
  }
  CubeFamily f;
  f.grid_ = grid;
  f.cubes_ = std::move(cubes);
  return f;
}

std::vector<std::size_t> CubeFamily::points(const Cube& q) const {
  std::vector<std::size_t> out;
  out.reserve(grid_.n == 1 ? q.len : q.len * q.len);
  for_points(grid_, q, [&](std::size_t x) { out.push_back(x); });
  return out;
}

Point CubeFamily::center(const Cube& q) const {
  const double half = 0.5 * side(q);
  return {grid_.axis_coordinate(q.start[0]) + half,
          grid_.n == 2 ? grid_.axis_coordinate(q.start[1]) + half : 0.0};
}

ApEstimate matrix_ap_characteristic(const MatrixWeight& W, double p, const CubeFamily& cubes) {
  require_exponent(p, false);
  if (!W.grid().same_lattice(cubes.grid())) fail(ErrorKind::contract, "cube family built for a different grid");
  if (cubes.size() == 0) return {};
  const double pp = p / (p - 1.0);
  const auto root = W.power(1.0 / p);
  const auto inv_root = W.power(-1.0 / p);
  const int m = W.m();
  std::vector<double> per_cube(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t c) {
    const auto pts = cubes.points(cubes.cubes()[c]);
    const double count = static_cast<double>(pts.size());
    double outer = 0.0;
    if (m == 1) {
      double inner = 0.0;
      for (auto y : pts) inner += std::pow(std::abs(inv_root->entry(0, 0, y)), pp);
      inner /= count;
      for (auto x : pts) outer += std::pow(std::pow(std::abs(root->entry(0, 0, x)), pp) * inner, p / pp);
    } else {
      std::vector<Mat> a, b;
      a.reserve(pts.size());
      b.reserve(pts.size());
      for (auto x : pts) a.push_back(root->at(x)), b.push_back(inv_root->at(x));
      for (const Mat& ax : a) {
        double inner = 0.0;
        for (const Mat& by : b) inner += std::pow(spectral_norm(ax * by), pp);
        outer += std::pow(inner / count, p / pp);
      }
    }
    per_cube[c] = outer / count;
  });
  const std::size_t best = argmax(per_cube);
  return {per_cube[best], cubes.cubes()[best]};
}

ApEstimate scalar_ap_characteristic(std::span<const double> w, const CubeFamily& cubes, double p) {
  require_exponent(p, true);
  if (w.size() != cubes.grid().points()) fail(ErrorKind::contract, "scalar weight sampled on a different grid");
  for (double v : w)
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::data, "scalar weight must be positive and finite");
  if (cubes.size() == 0) return {};
  std::vector<double> per_cube(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t c) {
    const auto pts = cubes.points(cubes.cubes()[c]);
    const double count = static_cast<double>(pts.size());
    double avg = 0.0;
    for (auto x : pts) avg += w[x];
    avg /= count;
    if (p == 1.0) {
      double lo = w[pts[0]];
      for (auto x : pts) lo = std::min(lo, w[x]);
      per_cube[c] = avg / lo;
      return;
    }
    const double pp = p / (p - 1.0);
    double dual = 0.0;
    for (auto x : pts) dual += std::pow(w[x], 1.0 - pp);
    dual /= count;
    per_cube[c] = avg * std::pow(dual, p - 1.0);
  });
  const std::size_t best = argmax(per_cube);
  return {per_cube[best], cubes.cubes()[best]};
}

std::vector<Vec> random_unit_vectors(int m, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) {
    Vec z(m);
    for (int i = 0; i < m; ++i) z(i) = {gauss(rng), gauss(rng)};
    z /= z.norm();
    out.push_back(z);
  }
  return out;
}

DoublingEstimate doubling_exponent(const MatrixWeight& W, double p, const CubeFamily& cubes,
                                   const DirectionOptions& opts) {
  require_exponent(p, true);
  if (!W.grid().same_lattice(cubes.grid())) fail(ErrorKind::contract, "cube family built for a different grid");
  const int m = W.m();
  const GridSpec& g = W.grid();
  std::vector<Vec> dirs = random_unit_vectors(m, opts.random_count, opts.seed);
  for (int i = 0; i < m; ++i) dirs.push_back(Vec::Unit(m, i));
  if (opts.eigenvectors && m > 1) {
    std::set<std::size_t> centres;
    for (const Cube& q : cubes.cubes())
      centres.insert(g.flatten(q.start[0] + q.len / 2, g.n == 2 ? q.start[1] + q.len / 2 : 0));
    for (auto x : centres) {
      const auto e = hermitian_eigen(W.samples().at(x));
      for (int i = 0; i < m; ++i) dirs.push_back(e.vectors.col(i));
    }
  }
  if (dirs.empty()) fail(ErrorKind::parameter, "doubling: no test directions");
  if (cubes.size() == 0) fail(ErrorKind::parameter, "doubling: empty cube family");

  const auto root = W.power(1.0 / p);
  struct Best {
    double ratio = 0.0;
    std::size_t cube = 0;
  };
  std::vector<Best> per_dir(dirs.size());
  std::vector<std::string> errors(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t d) {
    const Vec& z = dirs[d];
    std::vector<double> h(g.points());
    for (std::size_t x = 0; x < g.points(); ++x) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) {
        cplx v = 0.0;
        for (int j = 0; j < m; ++j) v += root->entry(i, j, x) * z(j);
        s += std::norm(v);
      }
      h[x] = std::pow(s, 0.5 * p);
    }
    Best best;
    for (std::size_t c = 0; c < cubes.size(); ++c) {
      const Cube& q = cubes.cubes()[c];
      // Normalising by one sample keeps constant integrands exact.
      const double ref = h[g.flatten(q.start[0], q.start[1])];
      const double scale = ref > 0.0 ? ref : 1.0;
      double inner = 0.0, outer = 0.0;
      for_points(g, q, [&](std::size_t x) { inner += h[x] / scale; });
      for_points(g, cubes.doubled(q), [&](std::size_t x) { outer += h[x] / scale; });
      if (!(inner > 1e-300)) {
        errors[d] = "doubling: degenerate cube (integral of |W^{1/p} z|^p vanishes)";
        return;
      }
      const double r = outer / inner;
      if (r > best.ratio) best = {r, c};
    }
    per_dir[d] = best;
  });
  for (const auto& e : errors)
    if (!e.empty()) fail(ErrorKind::numerical, e);
  std::size_t bd = 0;
  for (std::size_t d = 1; d < dirs.size(); ++d)
    if (per_dir[d].ratio > per_dir[bd].ratio) bd = d;
  DoublingEstimate out;
  out.C = per_dir[bd].ratio;
  out.beta = std::log2(out.C);
  out.worst = cubes.cubes()[per_dir[bd].cube];
  out.direction = dirs[bd];
  out.directions_used = dirs.size();
  return out;
}

}  // namespace modspace
