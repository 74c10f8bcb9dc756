// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <filesystem>
#include <random>

#include "modspace/error.hpp"
#include "modspace/weights/characteristics.hpp"
#include "modspace/weights/hermitian.hpp"
#include "modspace/weights/weight_spec.hpp"

using namespace modspace;

namespace {

Mat random_hpd(int m, std::mt19937& rng, double shift = 0.5) {
  std::normal_distribution<double> g;
  Mat b(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) b(i, j) = {g(rng), g(rng)};
  return b * b.adjoint() + shift * Mat::Identity(m, m);
}

// Functional calculus through a plain Eigen solver, for cross-checking.
Mat eigen_power(const Mat& a, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  Eigen::VectorXd v = es.eigenvalues().array().pow(t);
  return es.eigenvectors() * v.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

double svd_norm(const Mat& a) { return Eigen::JacobiSVD<Mat>(a).singularValues()(0); }

MatrixWeight weight(const GridSpec& g, WeightKind kind, std::vector<double> alpha,
                    ChannelProfile prof = ChannelProfile::power) {
  WeightSpec s;
  s.kind = kind;
  s.alpha = std::move(alpha);
  s.profile = prof;
  return make_weight(s, g);
}

std::vector<double> scalar_samples(const MatrixWeight& W) {
  std::vector<double> w(W.grid().points());
  for (std::size_t x = 0; x < w.size(); ++x) w[x] = W.samples().entry(0, 0, x).real();
  return w;
}

// Direct matrix A_p over one cube: double loop, SVD norms, independent powers.
double brute_matrix_ap(const MatrixWeight& W, double p, const CubeFamily& fam) {
  const double pp = p / (p - 1.0);
  double best = 0.0;
  for (const Cube& q : fam.cubes()) {
    const auto pts = fam.points(q);
    std::vector<Mat> a, b;
    for (std::size_t x : pts) {
      a.push_back(eigen_power(W.samples().at(x), 1.0 / p));
      b.push_back(eigen_power(W.samples().at(x), -1.0 / p));
    }
    double outer = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double inner = 0.0;
      for (std::size_t j = 0; j < pts.size(); ++j) inner += std::pow(svd_norm(a[i] * b[j]), pp);
      outer += std::pow(inner / pts.size(), p / pp);
    }
    best = std::max(best, outer / pts.size());
  }
  return best;
}

double brute_scalar_ap(const std::vector<double>& w, const CubeFamily& fam, double p) {
  double best = 0.0;
  for (const Cube& q : fam.cubes()) {
    const auto pts = fam.points(q);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t x : pts) {
      s1 += w[x];
      s2 += std::pow(w[x], -1.0 / (p - 1.0));
    }
    best = std::max(best, (s1 / pts.size()) * std::pow(s2 / pts.size(), p - 1.0));
  }
  return best;
}

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

}  // namespace

TEST_CASE("hermitian powers") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const Mat r = hermitian_power(d, 0.5);
  CHECK(std::abs(r(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(r(1, 1) - 3.0) < 1e-14);
  CHECK(std::abs(r(0, 1)) < 1e-14);
  CHECK((hermitian_power(Mat::Identity(3, 3), -0.7) - Mat::Identity(3, 3)).norm() < 1e-14);

  std::mt19937 rng(3);
  for (int m = 1; m <= 3; ++m)
    for (int trial = 0; trial < 20; ++trial) {
      const Mat a = random_hpd(m, rng);
      const Mat c = hermitian_power(a, 1.0 / 3.0);
      CHECK((c * c * c - a).norm() <= 1e-10 * a.norm());
      CHECK((hermitian_power(hermitian_power(a, 0.4), 2.5) - a).norm() <= 1e-10 * a.norm());
      CHECK((hermitian_power(a, 0.3) * hermitian_power(a, -0.3) - Mat::Identity(m, m)).norm() <= 1e-10);
      CHECK((hermitian_power(a, -0.6) - eigen_power(a, -0.6)).norm() <= 1e-10 * eigen_power(a, -0.6).norm());
      CHECK(spectral_norm(a * c) == doctest::Approx(svd_norm(a * c)).epsilon(1e-12));
    }

  Mat sing = Mat::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK(kind_of([&] { hermitian_power(sing, 0.5); }) == ErrorKind::conditioning);
}

TEST_CASE("matrix weight validation") {
  GridSpec g{1, 2, 16, 4.0};
  MatrixField f(g);
  for (std::size_t x = 0; x < g.points(); ++x) f.set(x, Mat::Identity(2, 2));
  Mat bad = Mat::Identity(2, 2);
  bad(1, 1) = -1.0;
  f.set(5, bad);
  try {
    MatrixWeight w(f);
    FAIL("expected a construction error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::data);
    CHECK(std::string(e.what()).find("gridpoint 5") != std::string::npos);
  }
  Mat nh = Mat::Identity(2, 2);
  nh(0, 1) = 0.3;
  f.set(5, nh);
  CHECK(kind_of([&] { MatrixWeight w(f); }) == ErrorKind::data);
}

TEST_CASE("power cache") {
  GridSpec g{1, 2, 32, 4.0};
  const auto W = weight(g, WeightKind::rotated_diagonal, {0.5, 1.5}, ChannelProfile::bracket);
  const auto a = W.power(0.5), b = W.power(0.5);
  CHECK(a.get() == b.get());
  const MatrixWeight copy = W;
  CHECK(copy.power(0.5).get() == a.get());
  const auto inv = W.power(-0.5);
  for (std::size_t x = 0; x < g.points(); ++x)
    CHECK((a->at(x) * inv->at(x) - Mat::Identity(2, 2)).norm() <= 1e-10);
  const auto composed = hpd_power(hpd_power(W, 0.5), 3.0);
  const auto direct = W.power(1.5);
  for (std::size_t x = 0; x < g.points(); ++x)
    CHECK((composed.samples().at(x) - direct->at(x)).norm() <= 1e-10 * direct->at(x).norm());
}

TEST_CASE("weight generators") {
  GridSpec g{1, 1, 64, 4.0};
  const auto I = weight(g, WeightKind::identity, {1.0});
  CHECK(I.is_identity());
  const auto w = weight(g, WeightKind::scalar_power, {1.0});
  for (std::size_t x = 0; x < g.points(); ++x) {
    const double v = w.samples().entry(0, 0, x).real();
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(std::abs(g.coordinate(x)[0] + 0.5 * g.dx())).epsilon(1e-14));
  }

  for (int n : {1, 2}) {
    GridSpec g3{n, 3, n == 1 ? 64u : 16u, 4.0};
    const auto R = weight(g3, WeightKind::rotated_diagonal, {0.5, -0.5, 1.0}, ChannelProfile::bracket);
    for (std::size_t x = 0; x < g3.points(); ++x) {
      const auto e = hermitian_eigen(R.samples().at(x)).values;
      std::vector<double> want;
      double r2 = 0.0;
      for (int d = 0; d < n; ++d) r2 += g3.coordinate(x)[d] * g3.coordinate(x)[d];
      for (double a : {0.5, -0.5, 1.0}) want.push_back(std::pow(1.0 + r2, 0.5 * a));
      std::sort(want.begin(), want.end());
      for (int i = 0; i < 3; ++i) CHECK(std::abs(e(i) - want[i]) <= 1e-12 * want[2]);
    }
  }
}

TEST_CASE("weight spec json and serialization") {
  try {
    weight_spec_from_json(json{{"kind", "diagonal-power"}, {"alpha", {1.0, 2.0, 3.0}}}).validate(2);
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    CHECK(std::string(e.what()).find("weight.alpha") != std::string::npos);
  }
  CHECK(kind_of([] { weight_spec_from_json(json{{"kind", "spiral"}}); }) == ErrorKind::config);

  GridSpec g{2, 2, 16, 4.0};
  WeightSpec s;
  s.kind = WeightKind::rotated_diagonal;
  s.alpha = {1.0, 2.0};
  s.delta = 0.1;
  const auto W = make_weight(s, g);
  const auto path = (std::filesystem::temp_directory_path() / "modspace_w_test.bin").string();
  write_matrix_weight(path, W);
  WeightSpec t = weight_spec_from_json(json{{"kind", "custom-table"}, {"table", path}});
  const auto back = make_weight(t, g);
  for (std::size_t x = 0; x < g.points(); ++x) CHECK((back.samples().at(x) - W.samples().at(x)).norm() == 0.0);
  CHECK(kind_of([&] { make_weight(t, GridSpec{2, 2, 32, 4.0}); }) == ErrorKind::config);
  std::filesystem::remove(path);
}

TEST_CASE("cube family") {
  GridSpec g{1, 1, 64, 4.0};
  const auto fam = CubeFamily::shifted_dyadic(g);
  CHECK(fam.size() > 0);
  bool origin = false;
  for (const Cube& q : fam.cubes()) {
    const Cube d = fam.doubled(q);
    CHECK(d.start[0] + d.len <= g.N);
    CHECK(q.len >= 4);
    if (q.start[0] == g.N / 2) origin = true;
  }
  CHECK(origin);
  CHECK(kind_of([&] { CubeFamily::from_cubes(g, {Cube{{10, 0}, 2}}); }) == ErrorKind::resolution);
  CHECK(kind_of([&] { CubeFamily::from_cubes(g, {Cube{{1, 0}, 8}}); }) == ErrorKind::parameter);
}

TEST_CASE("A_p characteristic") {
  GridSpec g{1, 1, 128, 4.0};
  const auto fam = CubeFamily::shifted_dyadic(g, 4, 32);
  std::vector<double> ones(g.points(), 1.0);
  CHECK(scalar_ap_characteristic(ones, fam, 2.0).value == 1.0);
  CHECK(scalar_ap_characteristic(ones, fam, 1.0).value == 1.0);
  CHECK(matrix_ap_characteristic(MatrixWeight::identity(GridSpec{1, 2, 128, 4.0}), 3.0,
                                 CubeFamily::shifted_dyadic(GridSpec{1, 2, 128, 4.0}, 4, 32))
            .value == doctest::Approx(1.0).epsilon(1e-14));

  for (double alpha : {-0.5, 0.5, 2.0}) {
    const auto W = weight(g, WeightKind::scalar_power, {alpha});
    const auto w = scalar_samples(W);
    for (double p : {1.5, 2.0, 3.0}) {
      CAPTURE(alpha);
      CAPTURE(p);
      const double m = matrix_ap_characteristic(W, p, fam).value;
      const double s = scalar_ap_characteristic(w, fam, p).value;
      CHECK(std::abs(m - s) <= 1e-10 * s);
      CHECK(s == doctest::Approx(brute_scalar_ap(w, fam, p)).epsilon(1e-12));
    }
  }

  // p = 1: max over cubes of average / minimum.
  const auto w1 = scalar_samples(weight(g, WeightKind::scalar_power, {0.5}));
  double want = 0.0;
  for (const Cube& q : fam.cubes()) {
    double s = 0.0, lo = 1e300;
    for (std::size_t x : fam.points(q)) {
      s += w1[x];
      lo = std::min(lo, w1[x]);
    }
    want = std::max(want, s / fam.points(q).size() / lo);
  }
  CHECK(scalar_ap_characteristic(w1, fam, 1.0).value == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("matrix A_p against a brute-force oracle") {
  GridSpec g{1, 2, 32, 4.0};
  const auto fam = CubeFamily::shifted_dyadic(g, 4, 8);
  WeightSpec s;
  s.kind = WeightKind::rotated_diagonal;
  s.alpha = {0.7, -0.4};
  s.rotation_rate = 1.3;
  const auto W = make_weight(s, g);
  for (double p : {1.5, 2.0, 4.0})
    CHECK(matrix_ap_characteristic(W, p, fam).value == doctest::Approx(brute_matrix_ap(W, p, fam)).epsilon(1e-10));
}

TEST_CASE("A_p is monotone in the cube family") {
  GridSpec g{1, 2, 64, 4.0};
  const auto W = weight(g, WeightKind::rotated_diagonal, {1.0, -0.5});
  const auto big = CubeFamily::shifted_dyadic(g);
  std::vector<Cube> half(big.cubes().begin(), big.cubes().begin() + big.size() / 2);
  const auto small = CubeFamily::from_cubes(g, half);
  CHECK(matrix_ap_characteristic(W, 2.0, small).value <= matrix_ap_characteristic(W, 2.0, big).value);
}

TEST_CASE("uniformly elliptic weights obey the condition-number envelope") {
  GridSpec g{1, 2, 64, 3.0};
  const auto W = weight(g, WeightKind::rotated_diagonal, {0.6, -0.6}, ChannelProfile::bracket);
  double lo = 1e300, hi = 0.0;
  for (std::size_t x = 0; x < g.points(); ++x) {
    const auto e = hermitian_eigen(W.samples().at(x)).values;
    lo = std::min(lo, e(0));
    hi = std::max(hi, e(1));
  }
  const auto fam = CubeFamily::shifted_dyadic(g);
  for (double p : {1.5, 2.0, 3.0}) {
    const double pp = p / (p - 1.0);
    CHECK(matrix_ap_characteristic(W, p, fam).value <= std::pow(hi / lo, std::max(1.0, pp / p)) * (1 + 1e-12));
  }
}

TEST_CASE("power weights: bounded inside the A_2 range, divergent outside") {
  // Refining the grid adds cubes at finer scales around the singularity.
  auto estimate = [](double alpha, std::size_t N) {
    GridSpec g{1, 1, N, 4.0};
    const auto w = scalar_samples(weight(g, WeightKind::scalar_power, {alpha}));
    return scalar_ap_characteristic(w, CubeFamily::shifted_dyadic(g), 2.0).value;
  };
  const double a1 = estimate(0.5, 128), a2 = estimate(0.5, 256), a3 = estimate(0.5, 512);
  CHECK(a3 / a2 < 1.05);
  CHECK(a2 / a1 < 1.05);
  CHECK(a3 < 10.0);
  const double b1 = estimate(3.0, 128), b2 = estimate(3.0, 256), b3 = estimate(3.0, 512);
  CHECK(b2 / b1 > 2.0);
  CHECK(b3 / b2 > 2.0);
}

TEST_CASE("doubling exponent") {
  for (int n : {1, 2}) {
    GridSpec g{n, 2, n == 1 ? 128u : 32u, 4.0};
    const auto fam = CubeFamily::shifted_dyadic(g);
    const auto d = doubling_exponent(MatrixWeight::identity(g), 2.0, fam);
    CHECK(d.C == std::pow(2.0, n));
    CHECK(d.beta == n);
    WeightSpec s;
    s.kind = WeightKind::identity;
    s.delta = 2.5;  // W = 3.5 I
    const auto d3 = doubling_exponent(make_weight(s, g), 3.0, fam);
    CHECK(d3.C == doctest::Approx(std::pow(2.0, n)).epsilon(1e-13));
  }

  GridSpec g{1, 1, 256, 4.0};
  const auto fam = CubeFamily::shifted_dyadic(g);
  const auto d = doubling_exponent(weight(g, WeightKind::scalar_power, {1.0}), 2.0, fam);
  CHECK(std::abs(d.C - 4.0) <= 0.02 * 4.0);
  CHECK(d.C >= 1.0);

  GridSpec g2{1, 2, 256, 4.0};
  const auto dd = doubling_exponent(weight(g2, WeightKind::diagonal_power, {0.5, 1.5}), 2.0,
                                    CubeFamily::shifted_dyadic(g2));
  CHECK(std::abs(dd.beta - 2.5) <= 0.05 * 2.5);
  CHECK(dd.directions_used >= 34);
}
