// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/reducing/strong_doubling.hpp"

#include <Eigen/LU>
#include <cmath>
#include <random>

#include "modspace/error.hpp"
#include "modspace/parallel.hpp"
#include "modspace/weights/hermitian.hpp"

namespace modspace {
namespace {

struct Best {
  double ratio = 0.0;
  CellRef q, p;
  void take(const Best& o) {
    if (o.ratio > ratio) *this = o;
  }
};

std::size_t origin_cell(const CellPartition& part) {
  const GridSpec& g = part.grid();
  const std::size_t half = g.N / 2;  // x = 0 sits at index N/2
  return part.cell_of(g.flatten(half, g.n == 2 ? half : 0));
}

double ratio_with(const ReducingOperatorSet& sq, std::size_t q, const ReducingOperatorSet& sp, std::size_t p,
                  const Mat& p_inverse, double beta, double exponent) {
  const int n = sq.partition().grid().n;
  const double lq = sq.partition().side(), lp = sp.partition().side();
  const Point xq = sq.partition().anchor(q), xp = sp.partition().anchor(p);
  double dist2 = 0.0;
  for (int d = 0; d < n; ++d) dist2 += (xq[d] - xp[d]) * (xq[d] - xp[d]);
  const double lmax = std::max(lq, lp);
  const double size_term = std::max(std::pow(lp / lq, n), std::pow(lq / lp, beta - n));
  const double dist_term = std::pow(1.0 + std::sqrt(dist2) / lmax, beta);
  return std::pow(spectral_norm(sq.op(q) * p_inverse), exponent) / (size_term * dist_term);
}

using Inverses = std::vector<std::vector<Mat>>;

Best scan(std::span<const ReducingOperatorSet> sets, const Inverses& inv, std::size_t used_sets,
          std::size_t random_pairs, std::uint64_t seed, double beta, double p) {
  auto strong_doubling_ratio = [&](const ReducingOperatorSet& a, std::size_t q, const ReducingOperatorSet& b,
                                   std::size_t r, double be, double ex) {
    const std::size_t bi = static_cast<std::size_t>(&b - sets.data());
    return ratio_with(a, q, b, r, inv[bi][r], be, ex);
  };
  std::vector<Best> per_set(used_sets);
  parallel_for(used_sets, [&](std::size_t s) {
    Best b;
    const auto& set = sets[s];
    for (std::size_t q = 0; q < set.size(); ++q)
      for (std::size_t r = 0; r < set.size(); ++r) {
        if (q == r) continue;
        const double v = strong_doubling_ratio(set, q, set, r, beta, p);
        b.take({v, {s, q}, {s, r}});
      }
    // Pairs touching the cell at the origin, against every other partition.
    for (std::size_t t = 0; t < used_sets; ++t) {
      if (t == s) continue;
      const std::size_t o = origin_cell(sets[t].partition());
      for (std::size_t q = 0; q < set.size(); ++q) {
        b.take({strong_doubling_ratio(set, q, sets[t], o, beta, p), {s, q}, {t, o}});
        b.take({strong_doubling_ratio(sets[t], o, set, q, beta, p), {t, o}, {s, q}});
      }
    }
    per_set[s] = b;
  });
  Best best;
  for (const auto& b : per_set) best.take(b);
  if (used_sets >= 2) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_set(0, used_sets - 1);
    for (std::size_t i = 0; i < random_pairs; ++i) {
      const std::size_t a = pick_set(rng), b = pick_set(rng);
      const std::size_t q = std::uniform_int_distribution<std::size_t>(0, sets[a].size() - 1)(rng);
      const std::size_t r = std::uniform_int_distribution<std::size_t>(0, sets[b].size() - 1)(rng);
      if (a == b && q == r) continue;
      best.take({strong_doubling_ratio(sets[a], q, sets[b], r, beta, p), {a, q}, {b, r}});
    }
  }
  return best;
}

std::size_t pair_count(std::span<const ReducingOperatorSet> sets, std::size_t used, std::size_t random_pairs) {
  std::size_t total = random_pairs;
  for (std::size_t s = 0; s < used; ++s) {
    total += sets[s].size() * (sets[s].size() - 1);
    total += 2 * sets[s].size() * (used - 1);
  }
  return total;
}

}  // namespace

double strong_doubling_ratio(const ReducingOperatorSet& sq, std::size_t q, const ReducingOperatorSet& sp,
                             std::size_t p, double beta, double exponent) {
  return ratio_with(sq, q, sp, p, sp.op(p).inverse(), beta, exponent);
}

StrongDoublingReport strong_doubling_check(std::span<const ReducingOperatorSet> sets, std::size_t base_sets,
                                           double beta, double p, const StrongDoublingOptions& opts) {
  if (sets.empty()) fail(ErrorKind::parameter, "strong doubling: no operator sets");
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorKind::parameter, "strong doubling: beta must be positive");
  base_sets = std::clamp<std::size_t>(base_sets, 1, sets.size());
  Inverses inv(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (std::size_t c = 0; c < sets[s].size(); ++c) inv[s].push_back(sets[s].op(c).inverse());
  const Best base = scan(sets, inv, base_sets, opts.cross_pairs, opts.seed, beta, p);
  const Best full = scan(sets, inv, sets.size(), 2 * opts.cross_pairs, opts.seed, beta, p);
  StrongDoublingReport r;
  r.C_base = base.ratio;
  r.C_estimate = std::max(full.ratio, base.ratio);
  r.base_pairs = pair_count(sets, base_sets, opts.cross_pairs);
  r.pairs = pair_count(sets, sets.size(), 2 * opts.cross_pairs);
  r.worst_q = full.ratio >= base.ratio ? full.q : base.q;
  r.worst_p = full.ratio >= base.ratio ? full.p : base.p;
  r.stable = std::isfinite(r.C_estimate) && r.C_estimate <= (1.0 + opts.stability) * r.C_base;
  r.pass = std::isfinite(r.C_estimate) && r.stable;
  return r;
}

}  // namespace modspace
