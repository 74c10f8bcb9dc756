// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "modspace/core/corpus.hpp"
#include "modspace/core/quadrature.hpp"
#include "modspace/error.hpp"
#include "modspace/freq/box_operator.hpp"
#include "modspace/modnorms/embedding_constant.hpp"
#include "modspace/modnorms/modnorms.hpp"
#include "modspace/weights/weight_spec.hpp"
#include "oracles.hpp"

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

const GridSpec kGrid{1, 2, 256, 12.0};

std::vector<VectorField> corpus(const GridSpec& g, int K, std::size_t size = 8) {
  CorpusSpec spec;
  spec.family = CorpusFamily::mixed;
  spec.size = size;
  spec.band_limit = K;
  return generate_corpus(spec, g);
}

MatrixWeight rotated(const GridSpec& g) {
  WeightSpec s;
  s.kind = WeightKind::rotated_diagonal;
  s.alpha = {1.0, -0.5};
  s.profile = ChannelProfile::bracket;
  return make_weight(s, g);
}

}  // namespace

TEST_CASE("exponent helpers") {
  CHECK(conjugate_exponent(2.0) == 2.0);
  CHECK(conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(conjugate_exponent(0.5) == 1.0);
  CHECK(conjugate_exponent(1.0) == 1.0);
  CHECK(conjugate_exponent(kInfinity) == 1.0);
  CHECK(kind_of([] { conjugate_exponent(0.0); }) == ErrorKind::parameter);

  const std::vector<double> t{3.0, 4.0, 0.0};
  CHECK(lq_combine(t, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(lq_combine(t, kInfinity) == 4.0);
  CHECK(lq_combine(t, 1.0) == 7.0);
  CHECK(lq_combine(std::vector<double>{1e-200, 1e-200}, 2.0) == doctest::Approx(std::sqrt(2.0) * 1e-200));
  CHECK(kind_of([] { NormParams{0.0, 0.5, 2.0}.validate(); }) == ErrorKind::parameter);
}

TEST_CASE("dual weights") {
  const auto I = MatrixWeight::identity(kGrid);
  CHECK(dual_weight(I, 3.0).is_identity());
  GridSpec g{1, 1, 64, 4.0};
  WeightSpec s;
  s.kind = WeightKind::scalar_power;
  s.alpha = {1.2};
  const auto W = make_weight(s, g);
  const auto d2 = dual_weight(W, 2.0), d3 = dual_weight(W, 3.0);
  for (std::size_t x = 0; x < g.points(); ++x) {
    const double w = W.samples().entry(0, 0, x).real();
    CHECK(d2.samples().entry(0, 0, x).real() == doctest::Approx(1.0 / w).epsilon(1e-12));
    CHECK(d3.samples().entry(0, 0, x).real() == doctest::Approx(std::pow(w, -0.5)).epsilon(1e-12));
  }
  CHECK(kind_of([&] { dual_weight(W, 1.0); }) == ErrorKind::parameter);
}

TEST_CASE("modulation norm against the dense oracle") {
  GridSpec g{1, 1, 256, 12.0};
  const auto fam = WindowFamily::build(g, 16, WindowProfile::smooth_bump);
  const auto gauss = VectorField::sample(g, Side::physical, [](const Point& x, std::span<cplx> o) {
    o[0] = std::exp(-0.5 * x[0] * x[0]);
  });
  std::vector<cplx> gv(gauss.data().begin(), gauss.data().end());
  const double want = oracle::dense_modulation_norm(g, gv, 16, WindowProfile::smooth_bump, 1.0, 2.0, 2.0);
  CHECK(modulation_norm(gauss, fam, nullptr, {1.0, 2.0, 2.0}) == doctest::Approx(want).epsilon(1e-8));

  CorpusSpec spec;
  spec.family = CorpusFamily::mixed;
  spec.size = 3;
  for (const auto& f : generate_corpus(spec, g)) {
    std::vector<cplx> fv(f.data().begin(), f.data().end());
    for (auto pq : {std::pair{2.0, 2.0}, std::pair{1.5, 3.0}}) {
      const double o = oracle::dense_modulation_norm(g, fv, 16, WindowProfile::smooth_bump, 0.5, pq.first, pq.second);
      CHECK(modulation_norm(f, fam, nullptr, {0.5, pq.first, pq.second}) == doctest::Approx(o).epsilon(1e-8));
    }
  }
}

TEST_CASE("modulation norm basics") {
  const auto fam = WindowFamily::build(kGrid, 16, WindowProfile::smooth_bump);
  const auto W = rotated(kGrid);
  CHECK(modulation_norm(VectorField(kGrid, Side::physical), fam, &W, {}) == 0.0);
  const auto fs = corpus(kGrid, 16);
  for (const auto& f : fs) {
    const double n2 = std::pow(modulation_norm(f, fam, nullptr, {0.0, 2.0, 2.0}), 2);
    const double l2 = std::pow(lp_norm(f, 2.0), 2);
    CHECK(n2 <= l2 * (1 + 1e-12));
    CHECK(n2 >= l2 / 3.0);

    VectorField g = f;
    g *= cplx(0.0, -3.0);
    CHECK(modulation_norm(g, fam, &W, {0.5, 3.0, 1.5}) ==
          doctest::Approx(3.0 * modulation_norm(f, fam, &W, {0.5, 3.0, 1.5})).epsilon(1e-13));
    double prev = 0.0;
    for (double s : {-1.0, 0.0, 0.5, 2.0}) {
      const double v = modulation_norm(f, fam, &W, {s, 2.0, 2.0});
      CHECK(v >= prev);
      prev = v;
    }
    double last = kInfinity;
    for (double q : {0.5, 1.0, 1.5, 2.0, 4.0, kInfinity}) {
      const double v = modulation_norm(f, fam, &W, {1.0, 2.0, q});
      CHECK(v <= last * (1 + 1e-12));
      last = v;
    }
  }
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    VectorField sum = fs[i];
    sum += fs[i + 1];
    const NormParams pr{1.0, 1.5, 2.5};
    CHECK(modulation_norm(sum, fam, &W, pr) <=
          (modulation_norm(fs[i], fam, &W, pr) + modulation_norm(fs[i + 1], fam, &W, pr)) * (1 + 1e-10));
  }

  VectorField rough(kGrid, Side::physical);
  auto r = oracle::random_samples(rough.data().size(), 3);
  std::copy(r.begin(), r.end(), rough.data().begin());
  CHECK(kind_of([&] { modulation_norm(rough, fam, nullptr, {}); }) == ErrorKind::truncation);
}

TEST_CASE("profile agrees with the box operators") {
  const auto fam = WindowFamily::build(kGrid, 16, WindowProfile::raised_cosine);
  const auto W = rotated(kGrid);
  const auto f = corpus(kGrid, 16, 2)[1];
  const auto prof = modulation_profile(f, fam, &W, {1.0, 3.0, 2.0});
  REQUIRE(prof.k.size() == 33);
  for (std::size_t i = 0; i < prof.k.size(); i += 4) {
    const double want = weighted_lp_norm(box_operator(f, prof.k[i], fam), &W, 3.0);
    CHECK(prof.piece_norms[i] == doctest::Approx(want).epsilon(1e-12));
    CHECK(prof.terms[i] == doctest::Approx(bracket(prof.k[i], 1) * want).epsilon(1e-12));
  }
}

TEST_CASE("averaged modulation norms") {
  // Paper-convention cells at k = K need dx <= 1 / (2 <K>).
  const GridSpec kGrid{1, 2, 1024, 12.0};
  const auto fam = WindowFamily::build(kGrid, 8, WindowProfile::smooth_bump);
  const auto fs = corpus(kGrid, 8, 4);
  const auto I = MatrixWeight::identity(kGrid);
  const auto idops = ReducingFamily::build(I, 2.0, fam, 1.0, RConvention::paper, ReducingMethod::moment);
  for (const auto& f : fs)
    CHECK(averaged_modulation_norm(f, fam, idops, {0.0, 2.0, 2.0}) ==
          doctest::Approx(modulation_norm(f, fam, nullptr, {0.0, 2.0, 2.0})).epsilon(1e-14));
  CHECK(averaged_modulation_norm(VectorField(kGrid, Side::physical), fam, idops, {}) == 0.0);

  // Under the unit convention every k shares the unit-cell partition, so a
  // weight constant on unit cells is averaged exactly.
  const auto part = CellPartition::build(kGrid, {0, 0}, 1.0, RConvention::unit);
  std::mt19937 rng(4);
  std::normal_distribution<double> nd;
  MatrixField mf(kGrid);
  std::vector<Mat> per(part.size());
  for (auto& a : per) {
    Mat b(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) b(i, j) = {nd(rng), nd(rng)};
    a = b * b.adjoint() + 0.2 * Mat::Identity(2, 2);
  }
  for (std::size_t x = 0; x < kGrid.points(); ++x) mf.set(x, per[part.cell_of(x)]);
  const MatrixWeight W(mf);
  const auto ops = ReducingFamily::build(W, 2.0, fam, 1.0, RConvention::unit, ReducingMethod::moment);
  CHECK(ops.sets().size() == 1);
  for (const auto& f : fs)
    CHECK(averaged_modulation_norm(f, fam, ops, {0.5, 2.0, 3.0}) ==
          doctest::Approx(modulation_norm(f, fam, &W, {0.5, 2.0, 3.0})).epsilon(1e-8));

  // Scaling A_Q by <k>^1 breaks k-uniformity: the per-k ratio grows with <k>.
  const auto bad = idops.scaled_by_bracket(1.0);
  const auto good_prof = averaged_modulation_profile(fs[2], fam, idops, {0.0, 2.0, 2.0});
  const auto bad_prof = averaged_modulation_profile(fs[2], fam, bad, {0.0, 2.0, 2.0});
  for (std::size_t i = 0; i < good_prof.k.size(); ++i)
    if (good_prof.piece_norms[i] > 0.0)
      CHECK(bad_prof.piece_norms[i] / good_prof.piece_norms[i] ==
            doctest::Approx(bracket(good_prof.k[i], 1)).epsilon(1e-12));
}

TEST_CASE("stft modulation norm") {
  const auto fam = WindowFamily::build(kGrid, 16, WindowProfile::smooth_bump);
  const auto g = gaussian_window(1);
  CHECK(stft_modulation_norm(VectorField(kGrid, Side::physical), fam, nullptr, {}, g) == 0.0);
  for (const auto& f : corpus(kGrid, 16, 6)) {
    const double v = stft_modulation_norm(f, fam, nullptr, {0.0, 2.0, 2.0}, g);
    CHECK(v == doctest::Approx(std::sqrt(2.0 * std::numbers::pi) * lp_norm(f, 2.0)).epsilon(0.02));
    VectorField f2 = f;
    f2 *= 2.0;
    CHECK(stft_modulation_norm(f2, fam, nullptr, {1.0, 1.5, 3.0}, g) ==
          doctest::Approx(2.0 * stft_modulation_norm(f, fam, nullptr, {1.0, 1.5, 3.0}, g)).epsilon(1e-13));
  }
}

TEST_CASE("sequence norms") {
  GridSpec g{1, 1, 128, 8.0};
  const auto fs = corpus(g, 8, 3);
  const auto I = MatrixWeight::identity(g);
  SequenceFamily single{{LatticeIndex{0, 0}}, {fs[0]}};
  CHECK(sequence_norm(single, 7.0, 2.0, 2.0, {&I}) == doctest::Approx(lp_norm(fs[0], 2.0)).epsilon(1e-14));

  SequenceFamily seq{{LatticeIndex{0, 0}, LatticeIndex{2, 0}, LatticeIndex{-3, 0}}, {fs[0], fs[1], fs[2]}};
  double sup = 0.0;
  for (std::size_t i = 0; i < 3; ++i) sup = std::max(sup, std::pow(bracket(seq.k[i], 1), 0.5) * lp_norm(seq.f[i], 3.0));
  CHECK(sequence_norm(seq, 0.5, 3.0, kInfinity) == doctest::Approx(sup).epsilon(1e-14));
  SequenceFamily twice = seq;
  for (auto& f : twice.f) f *= 2.0;
  CHECK(sequence_norm(twice, 0.5, 3.0, 1.5) == doctest::Approx(2.0 * sequence_norm(seq, 0.5, 3.0, 1.5)).epsilon(1e-14));

  cplx want = 0.0;
  for (std::size_t i = 0; i < 3; ++i) want += bilinear_pairing(seq.f[i], twice.f[i]);
  CHECK(std::abs(sequence_pairing(seq, twice) - want) <= 1e-13 * std::abs(want));

  SequenceFamily mixed{{LatticeIndex{0, 0}, LatticeIndex{1, 0}}, {fs[0], generate_corpus(CorpusSpec{}, kGrid)[0]}};
  CHECK(kind_of([&] { sequence_norm(mixed, 0.0, 2.0, 2.0); }) == ErrorKind::contract);
}

TEST_CASE("lattice bracket series") {
  const auto s = lattice_bracket_series(1, 2.0);
  CHECK(s.value == doctest::Approx(std::numbers::pi / std::tanh(std::numbers::pi)).epsilon(1e-10));
  CHECK(std::abs(s.value - 3.15334809493716) <= 1e-8);
  const auto partial = lattice_bracket_partial_sums(1, 2.0, 1000);
  REQUIRE(!partial.empty());
  for (std::size_t i = 1; i < partial.size(); ++i) CHECK(partial[i].second >= partial[i - 1].second);
  CHECK(std::isfinite(lattice_bracket_series(2, 2.5).value));
  try {
    lattice_bracket_series(2, 2.0);
    FAIL("expected a hypothesis violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::hypothesis);
  }
}
