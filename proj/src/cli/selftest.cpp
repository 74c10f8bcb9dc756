// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "modspace/cli/cli.hpp"
#include "modspace/core/fourier.hpp"
#include "modspace/core/quadrature.hpp"
#include "modspace/error.hpp"
#include "modspace/modnorms/embedding_constant.hpp"
#include "modspace/modnorms/modnorms.hpp"
#include "modspace/weights/characteristics.hpp"

namespace modspace::cli {

namespace {

struct Line {
  const char* name;
  std::function<double()> measure;  // returns the measured quantity
  std::function<bool(double)> ok;
};

double gaussian_self_duality() {
  const GridSpec g{1, 1, 256, 12.0};
  const auto f = VectorField::sample(g, Side::physical, [](const Point& x, std::span<cplx> v) {
    v[0] = std::exp(-x[0] * x[0] / 2.0);
  });
  const auto F = fourier_transform(f, Direction::forward);
  double err = 0.0;
  for (std::size_t j = 0; j < g.N; ++j) {
    const double xi = g.axis_frequency(j);
    err = std::max(err, std::abs(F.at(0, j) - std::exp(-xi * xi / 2.0)));
  }
  return err;
}

double parseval_defect() {
  const GridSpec g{1, 1, 256, 12.0};
  CorpusSpec spec;
  spec.family = CorpusFamily::mixed;
  double worst = 0.0;
  for (const auto& f : generate_corpus(spec, g)) {
    const double a = lp_norm(f, 2.0);
    const auto F = fourier_transform(f, Direction::forward);
    double s = 0.0;
    for (const auto& v : F.data()) s += std::norm(v);
    const double b = std::sqrt(s * g.freq_cell_volume());
    worst = std::max(worst, std::abs(a - b) / a);
  }
  return worst;
}

double window_lower_bound() {
  const auto fam = WindowFamily::build({1, 1, 256, 12.0}, 16, WindowProfile::smooth_bump);
  const auto v = validate_window_family(fam);
  return v.pass() ? v.c : -1.0;
}

double weighted_gaussian() {
  const GridSpec g{1, 1, 256, 12.0};
  WeightSpec ws;
  ws.kind = WeightKind::bracket_power;
  ws.alpha = {2.0};
  const MatrixWeight W = make_weight(ws, g);
  const auto f = VectorField::sample(g, Side::physical, [](const Point& x, std::span<cplx> v) {
    v[0] = std::exp(-x[0] * x[0] / 2.0);
  });
  return std::abs(weighted_lp_norm(f, &W, 2.0) - std::sqrt(1.5 * std::sqrt(std::numbers::pi)));
}

double identity_doubling() {
  const GridSpec g{1, 1, 256, 12.0};
  const auto d = doubling_exponent(MatrixWeight::identity(g), 2.0, CubeFamily::shifted_dyadic(g));
  return std::abs(d.C - 2.0) + std::abs(d.beta - 1.0);
}

double monotone_violations() {
  const GridSpec g{1, 1, 256, 12.0};
  const auto fam = WindowFamily::build(g, 16, WindowProfile::smooth_bump);
  CorpusSpec spec;
  spec.family = CorpusFamily::mixed;
  double count = 0.0;
  const double qs[] = {1.0, 1.5, 2.0, 4.0, kInfinity};
  for (const auto& f : generate_corpus(spec, g)) {
    const auto prof = modulation_profile(f, fam, nullptr, {});
    for (int i = 0; i + 1 < 5; ++i)
      count += lq_combine(prof.terms, qs[i + 1]) > lq_combine(prof.terms, qs[i]) * (1.0 + 1e-12);
  }
  return count;
}

double coth_constant() {
  const double exact = std::numbers::pi / std::tanh(std::numbers::pi);
  return std::abs(lattice_bracket_series(1, 2.0).value - exact) / exact;
}

double divergent_gate() {
  try {
    lattice_bracket_series(1, 1.0);
  } catch (const Error& e) {
    return e.kind() == ErrorKind::hypothesis ? 1.0 : 0.0;
  }
  return 0.0;
}

double zero_field_norm() {
  const GridSpec g{1, 1, 256, 12.0};
  const auto fam = WindowFamily::build(g, 16, WindowProfile::smooth_bump);
  return modulation_norm(VectorField(g, Side::physical), fam, nullptr, {});
}

double identity_reducing() {
  const GridSpec g{1, 2, 256, 12.0};
  const auto fam = WindowFamily::build(g, 8, WindowProfile::smooth_bump);
  const MatrixWeight W = MatrixWeight::identity(g);
  const auto ops = ReducingFamily::build(W, 2.0, fam, 1.0, RConvention::unit, ReducingMethod::moment);
  CorpusSpec spec;
  spec.band_limit = 8;
  spec.size = 5;
  double dev = 0.0;
  for (const auto& f : generate_corpus(spec, g))
    dev = std::max(dev, std::abs(averaged_modulation_norm(f, fam, ops, {}) / modulation_norm(f, fam, &W, {}) - 1.0));
  return dev;
}

}  // namespace

int selftest(std::ostream& out) {
  const std::vector<Line> lines{
      {"gaussian self-duality error", gaussian_self_duality, [](double v) { return v <= 1e-10; }},
      {"parseval defect on corpus", parseval_defect, [](double v) { return v <= 1e-10; }},
      {"window family clauses, lower bound c", window_lower_bound, [](double v) { return v >= 1.0 / 3.0; }},
      {"lambda sets |L1| + |L2|", [] { return static_cast<double>(lambda_set(1).size() + lambda_set(2).size()); },
       [](double v) { return v == 54.0; }},
      {"weighted gaussian norm error", weighted_gaussian, [](double v) { return v <= 1e-6; }},
      {"identity doubling |C - 2| + |beta - 1|", identity_doubling, [](double v) { return v == 0.0; }},
      {"q-monotonicity violations", monotone_violations, [](double v) { return v == 0.0; }},
      {"pi coth(pi) relative error", coth_constant, [](double v) { return v <= 1e-8; }},
      {"divergent series refused", divergent_gate, [](double v) { return v == 1.0; }},
      {"zero field norm", zero_field_norm, [](double v) { return v == 0.0; }},
      {"identity reducing operators |ratio - 1|", identity_reducing, [](double v) { return v <= 1e-12; }},
  };
  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  for (const auto& l : lines) {
    double v = 0.0;
    bool ok = false;
    try {
      v = l.measure();
      ok = l.ok(v);
    } catch (const Error& e) {
      out << "[FAIL] " << l.name << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
      all = false;
      continue;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%s] %s: %.6g\n", ok ? "PASS" : "FAIL", l.name, v);
    out << buf;
    all = all && ok;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << "selftest " << (all ? "passed" : "FAILED") << " in " << secs << " s\n";
  return all ? 0 : 1;
}

}  // namespace modspace::cli
