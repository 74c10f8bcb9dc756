// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <Eigen/LU>
#include <cmath>
#include <random>

#include "modspace/core/corpus.hpp"
#include "modspace/core/quadrature.hpp"
#include "modspace/error.hpp"
#include "modspace/reducing/cell_partition.hpp"
#include "modspace/reducing/reducing_operator.hpp"
#include "modspace/reducing/strong_doubling.hpp"
#include "modspace/weights/characteristics.hpp"
#include "modspace/weights/hermitian.hpp"
#include "modspace/weights/weight_spec.hpp"

using namespace modspace;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::io;
}

Mat random_hpd(int m, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Mat b(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) b(i, j) = {g(rng), g(rng)};
  return b * b.adjoint() + 0.3 * Mat::Identity(m, m);
}

MatrixWeight rotated(const GridSpec& g, std::vector<double> alpha) {
  WeightSpec s;
  s.kind = WeightKind::rotated_diagonal;
  s.alpha = std::move(alpha);
  s.rotation_rate = 0.8;
  return make_weight(s, g);
}

// rho_Q(z) = (avg_Q |W^{1/p} z|^p)^{1/p}, straight from the definition.
double rho(const MatrixWeight& W, double p, std::span<const std::size_t> cell, const Vec& z) {
  double s = 0.0;
  for (std::size_t x : cell) s += std::pow((hermitian_power(W.samples().at(x), 1.0 / p) * z).norm(), p);
  return std::pow(s / cell.size(), 1.0 / p);
}

}  // namespace

TEST_CASE("cell partitions") {
  GridSpec g{1, 1, 256, 8.0};
  const auto p0 = CellPartition::build(g, {0, 0}, 2.0, RConvention::paper);
  CHECK(p0.r() == 1.0);
  CHECK(p0.side() == 0.5);
  const auto p3 = CellPartition::build(g, {3, 0}, 1.0, RConvention::paper);
  CHECK(p3.side() == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-15));
  CHECK(CellPartition::build(g, {3, 0}, 1.0, RConvention::unit).side() == 1.0);

  for (int n : {1, 2}) {
    GridSpec gg{n, 1, n == 1 ? 256u : 64u, 8.0};
    const auto part = CellPartition::build(gg, {n == 1 ? 2 : 1, n == 2 ? 1 : 0}, n == 1 ? 1.0 : 0.75, RConvention::paper);
    std::vector<int> hits(gg.points(), 0);
    std::size_t total = 0;
    for (std::size_t c = 0; c < part.size(); ++c) {
      total += part.members(c).size();
      for (std::size_t x : part.members(c)) {
        ++hits[x];
        CHECK(part.cell_of(x) == c);
      }
      if (!part.clipped(c)) CHECK(part.members(c).size() >= (n == 1 ? 2u : 4u));
    }
    CHECK(total == gg.points());
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK(kind_of([&] { CellPartition::build(g, {0, 0}, 0.4, RConvention::paper); }) == ErrorKind::parameter);
  CHECK(kind_of([] { CellPartition::build(GridSpec{1, 1, 16, 4.0}, {10, 0}, 1.0, RConvention::paper); }) ==
        ErrorKind::resolution);
  CHECK(kind_of([] { r_convention_from_string("half"); }) == ErrorKind::config);
}

TEST_CASE("reducing operators for simple weights") {
  GridSpec g{1, 2, 256, 8.0};
  const auto part = CellPartition::build(g, {1, 0}, 1.0, RConvention::paper);
  const auto I = MatrixWeight::identity(g);
  for (auto method : {ReducingMethod::moment, ReducingMethod::mvee}) {
    const auto ops = ReducingOperatorSet::build(I, 3.0, part, method);
    for (std::size_t c = 0; c < ops.size(); ++c)
      CHECK((ops.op(c) - Mat::Identity(2, 2)).norm() <= (method == ReducingMethod::moment ? 1e-14 : 1e-6));
  }

  WeightSpec s;
  s.kind = WeightKind::diagonal_power;
  s.alpha = {1.0, 0.5};
  s.profile = ChannelProfile::bracket;
  const auto W = make_weight(s, g);
  const auto ops = ReducingOperatorSet::build(W, 2.0, part, ReducingMethod::moment);
  for (std::size_t c = 0; c < ops.size(); ++c) {
    double a0 = 0.0, a1 = 0.0;
    for (std::size_t x : part.members(c)) {
      a0 += W.samples().entry(0, 0, x).real();
      a1 += W.samples().entry(1, 1, x).real();
    }
    const auto cnt = static_cast<double>(part.members(c).size());
    CHECK(std::abs(ops.op(c)(0, 0) - std::sqrt(a0 / cnt)) <= 1e-12 * std::sqrt(a0 / cnt));
    CHECK(std::abs(ops.op(c)(1, 1) - std::sqrt(a1 / cnt)) <= 1e-12 * std::sqrt(a1 / cnt));
    CHECK(std::abs(ops.op(c)(0, 1)) <= 1e-14);
  }
}

TEST_CASE("moment operator is exact at p = 2 and mvee is equivalent") {
  GridSpec g{1, 2, 256, 8.0};
  const auto W = rotated(g, {1.0, -0.6});
  const auto part = CellPartition::build(g, {0, 0}, 1.0, RConvention::paper);
  const auto dirs = random_unit_vectors(2, 40, 5);
  const auto m2 = ReducingOperatorSet::build(W, 2.0, part, ReducingMethod::moment);
  for (std::size_t c = 0; c < part.size(); c += 3)
    for (const Vec& z : dirs) {
      const double r = rho(W, 2.0, part.members(c), z);
      CHECK((m2.op(c) * z).norm() == doctest::Approx(r).epsilon(1e-10));
    }

  const double bound = std::sqrt(2.0 * 2);
  for (double p : {1.5, 3.0}) {
    const auto mv = ReducingOperatorSet::build(W, p, part, ReducingMethod::mvee);
    const auto mo = ReducingOperatorSet::build(W, p, part, ReducingMethod::moment);
    for (std::size_t c = 0; c < part.size(); c += 2)
      for (const Vec& z : dirs) {
        const double r = rho(W, p, part.members(c), z);
        const double a = (mv.op(c) * z).norm(), b = (mo.op(c) * z).norm();
        CHECK(a >= r / bound);
        CHECK(a <= r * bound);
        CHECK(a / b <= bound);
        CHECK(b / a <= bound);
      }
  }
}

TEST_CASE("mvee of a known ellipse") {
  // Points on the boundary of {|B z| <= 1} for B = diag(2, 0.5): the MVEE is
  // that ellipse, so the returned root maps them onto the unit sphere.
  std::vector<Vec> pts;
  for (int i = 0; i < 64; ++i) {
    const double t = 2.0 * 3.141592653589793 * i / 64;
    Vec z(2);
    z << cplx(std::cos(t) / 2.0, 0.0), cplx(std::sin(t) / 0.5, 0.0);
    pts.push_back(z);
    pts.push_back(cplx(0.0, 1.0) * z);
  }
  const Mat X = mvee_shape(pts, 1e-9, 10000);
  const Mat Xinv = X.inverse();
  for (const Vec& z : pts) CHECK(std::real((z.adjoint() * Xinv * z)(0, 0)) <= 2.0);
  CHECK(std::abs(Xinv(0, 0) / 2.0 - 4.0) <= 1e-6);
  CHECK(std::abs(Xinv(1, 1) / 2.0 - 0.25) <= 1e-6);
  CHECK(std::abs(Xinv(0, 1)) <= 1e-6);
  CHECK(kind_of([&] { mvee_shape(pts, 1e-9, 3); }) == ErrorKind::numerical);
}

TEST_CASE("averaged norms") {
  GridSpec g{1, 2, 256, 8.0};
  CorpusSpec spec;
  spec.size = 6;
  spec.family = CorpusFamily::mixed;
  spec.band_limit = 12;
  const auto fs = generate_corpus(spec, g);
  const auto part = CellPartition::build(g, {2, 0}, 1.0, RConvention::paper);

  const auto id = ReducingOperatorSet::identity(part, 2.0);
  for (const auto& f : fs)
    for (double p : {1.0, 2.0, 3.5}) CHECK(averaged_lp_norm(f, id, p) == doctest::Approx(lp_norm(f, p)).epsilon(1e-14));
  CHECK(averaged_lp_norm(VectorField(g, Side::physical), id, 2.0) == 0.0);

  // Weight constant on every cell: averaging is exact.
  std::mt19937 rng(12);
  std::vector<Mat> per(part.size());
  for (auto& a : per) a = random_hpd(2, rng);
  MatrixField mf(g);
  for (std::size_t x = 0; x < g.points(); ++x) mf.set(x, per[part.cell_of(x)]);
  const MatrixWeight W(mf);
  const auto ops = ReducingOperatorSet::build(W, 2.0, part, ReducingMethod::moment);
  for (const auto& f : fs) CHECK(averaged_lp_norm(f, ops, 2.0) == doctest::Approx(weighted_lp_norm(f, &W, 2.0)).epsilon(1e-10));

  const auto other = ReducingOperatorSet::identity(CellPartition::build(GridSpec{1, 2, 128, 8.0}, {2, 0}, 1.0, RConvention::paper), 2.0);
  CHECK(kind_of([&] { averaged_lp_norm(fs[0], other, 2.0); }) == ErrorKind::contract);

  const auto inv = ops.inverse(), it = ops.inverse_transpose();
  for (std::size_t c = 0; c < ops.size(); ++c) {
    CHECK((ops.op(c) * inv.op(c) - Mat::Identity(2, 2)).norm() <= 1e-10);
    CHECK((it.op(c) - inv.op(c).transpose()).norm() <= 1e-14);
  }
  const auto twice = ops.scaled(2.0);
  CHECK(averaged_lp_norm(fs[1], twice, 2.0) == doctest::Approx(2.0 * averaged_lp_norm(fs[1], ops, 2.0)).epsilon(1e-13));
}

TEST_CASE("moment and mvee averaged norms agree within sqrt(2m)") {
  GridSpec g{1, 2, 256, 8.0};
  CorpusSpec spec;
  spec.size = 6;
  spec.band_limit = 12;
  const auto fs = generate_corpus(spec, g);
  const auto W = rotated(g, {0.8, -0.4});
  const auto part = CellPartition::build(g, {1, 0}, 1.0, RConvention::paper);
  const double p = 3.0;
  const auto a = ReducingOperatorSet::build(W, p, part, ReducingMethod::mvee);
  const auto b = ReducingOperatorSet::build(W, p, part, ReducingMethod::moment);
  for (const auto& f : fs) {
    const double na = averaged_lp_norm(f, a, p), nb = averaged_lp_norm(f, b, p);
    CHECK(na / nb <= 2.0);
    CHECK(nb / na <= 2.0);
  }
}

TEST_CASE("strong doubling") {
  GridSpec g{1, 1, 1024, 12.0};
  auto sets_for = [&](const MatrixWeight& W) {
    std::vector<ReducingOperatorSet> sets;
    for (int k = 0; k <= 8; ++k)
      sets.push_back(ReducingOperatorSet::build(W, 2.0, CellPartition::build(g, {k, 0}, 1.0, RConvention::paper),
                                                ReducingMethod::moment));
    return sets;
  };
  StrongDoublingOptions opts;
  opts.cross_pairs = 2000;

  const auto id = sets_for(MatrixWeight::identity(g));
  const auto ri = strong_doubling_check(id, 4, 1.0, 2.0, opts);
  CHECK(ri.C_estimate <= 1.0 + 1e-12);
  CHECK(ri.pass);
  CHECK(ri.pairs > ri.base_pairs);

  WeightSpec s;
  s.kind = WeightKind::scalar_power;
  s.alpha = {1.0};
  const auto W = make_weight(s, g);
  const double beta = doubling_exponent(W, 2.0, CubeFamily::shifted_dyadic(g)).beta;
  CHECK(beta == doctest::Approx(2.0).epsilon(0.02));
  const auto sw = sets_for(W);
  const auto good = strong_doubling_check(sw, 4, beta, 2.0, opts);
  CHECK(std::isfinite(good.C_estimate));
  CHECK(good.stable);
  const auto bad = strong_doubling_check(sw, 4, beta / 2.0, 2.0, opts);
  CHECK_FALSE(bad.stable);
  CHECK(bad.C_estimate > good.C_estimate);

  CHECK(strong_doubling_ratio(sw[0], 3, sw[0], 3, beta, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}
