// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "modspace/core/fourier.hpp"
#include "modspace/error.hpp"
#include "modspace/verify/experiments.hpp"
#include "support.hpp"

namespace modspace::detail {

std::vector<Scale> refinement_scales(const ExperimentConfig& cfg, const ScaleFilter& fits) {
  std::vector<Scale> out{{"base", cfg.grid, cfg.K}, {"N->2N", cfg.grid.refined(), cfg.K}};
  GridSpec g = cfg.grid;
  const int K = cfg.K + 4;
  for (int tries = 0;; ++tries) {
    const bool safe = g.nyquist() >= K + std::sqrt(static_cast<double>(g.n)) + 2.0;
    if (safe && (!fits || fits(g, K))) break;
    if (tries == 4) fail(ErrorKind::config, "no grid up to 16 N hosts the K->K+4 refinement");
    g = g.refined();
  }
  out.push_back({"K->K+4", g, K});
  return out;
}

void push_ratio(Band& b, double num, double den) {
  if (num == 0.0 && den == 0.0) {
    ++b.excluded;
    return;
  }
  b.ratios.push_back(den == 0.0 ? std::numeric_limits<double>::infinity() : num / den);
}

void close_band(Band& b) {
  if (b.ratios.empty()) {
    b.lo = b.hi = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  const auto [lo, hi] = std::minmax_element(b.ratios.begin(), b.ratios.end());
  b.lo = *lo;
  b.hi = *hi;
}

double relative_drift(double base, double refined) {
  if (base == refined) return 0.0;
  if (!std::isfinite(base) || !std::isfinite(refined) || base == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(refined / base - 1.0);
}

void record_refinement(VerificationReport& r, const std::string& what, const std::vector<Scale>& scales,
                       const std::vector<Band>& bands, bool primary, bool only_max) {
  json steps = json::array();
  for (std::size_t i = 0; i < bands.size(); ++i) {
    double drift = 0.0;
    if (i > 0) {
      drift = relative_drift(bands[0].hi, bands[i].hi);
      if (!only_max) drift = std::max(drift, relative_drift(bands[0].lo, bands[i].lo));
      std::ostringstream os;
      os << what << " band [" << bands[i].lo << ", " << bands[i].hi << "] at N = " << scales[i].grid.N
         << ", K = " << scales[i].K << " against [" << bands[0].lo << ", " << bands[0].hi << "]";
      r.add_check("drift " + what + " " + scales[i].label, drift, kDriftTolerance, drift <= kDriftTolerance,
                  os.str());
    }
    if (primary) {
      r.refinement.push_back({scales[i].label, scales[i].grid.N, scales[i].K, bands[i].lo, bands[i].hi, drift});
    } else {
      steps.push_back({{"label", scales[i].label}, {"N", scales[i].grid.N}, {"K", scales[i].K},
                       {"C_min", bands[i].lo}, {"C_max", bands[i].hi}, {"drift", drift}});
    }
  }
  if (primary) {
    r.ratios = bands[0].ratios;
    r.C_min = bands[0].lo;
    r.C_max = bands[0].hi;
    r.extra["excluded_items"] = bands[0].excluded;
  } else {
    r.extra["refinement_" + what] = steps;
  }
}

std::vector<VectorField> corpus_on(const ExperimentConfig& cfg, const GridSpec& grid) {
  CorpusSpec spec = cfg.corpus;
  spec.band_limit = cfg.K;
  return generate_corpus(spec, grid);
}

void require_corpus_size(const ExperimentConfig& cfg) {
  if (cfg.corpus.size < kMinCorpus)
    fail(ErrorKind::config, "corpus.size: experiments need at least " + std::to_string(kMinCorpus) + " items (got " +
                                std::to_string(cfg.corpus.size) + ")");
}

NormParams norm_params(const ExperimentParams& p, double s, double q) { return {s, p.p, q, p.bracket_mode}; }

bool plain_setting(const ExperimentConfig& cfg) {
  const auto& P = cfg.params;
  return cfg.weight.kind == WeightKind::identity && P.s == 0.0 && P.p == 2.0 && P.q == 2.0;
}

VectorField spectral_bump(const GridSpec& grid, const Point& center, double radius) {
  VectorField spec = VectorField::sample(grid, Side::frequency, [&](const Point& xi, std::span<cplx> out) {
    const double d = std::hypot(xi[0] - center[0], grid.n == 2 ? xi[1] - center[1] : 0.0);
    const double v = d < radius ? std::pow(std::cos(std::numbers::pi * d / (2.0 * radius)), 2) : 0.0;
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = v * cplx(1.0, 0.5 * static_cast<double>(c));
  });
  return fourier_transform(spec, Direction::inverse);
}

WindowFamily broken_family(const WindowFamily& fam, const LatticeIndex& k0) {
  WindowFamily out = fam;
  for (const auto& k : fam.indices()) {
    bool near = true;
    for (int d = 0; d < fam.grid().n; ++d) near = near && std::abs(k[d] - k0[d]) <= 1;
    if (near) out = out.with_zeroed(k);
  }
  return out;
}

double control_bump_radius(int n) { return n == 1 ? 0.9 : 0.5; }

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

VectorField apply_field(const MatrixField& M, const VectorField& f) {
  VectorField out(f.grid(), f.side());
  const int m = f.m();
  for (std::size_t x = 0; x < f.count(); ++x)
    for (int i = 0; i < m; ++i) {
      cplx acc = 0.0;
      for (int j = 0; j < m; ++j) acc += M.entry(i, j, x) * f.at(j, x);
      out.at(i, x) = acc;
    }
  return out;
}

VectorField conjugate(const VectorField& f) {
  VectorField out = f;
  for (auto& v : out.data()) v = std::conj(v);
  return out;
}

json hypothesis_json(const ExperimentConfig& cfg, const std::string& statement) {
  const auto& P = cfg.params;
  auto num = [](double v) -> json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  return {{"statement", statement},
          {"n", cfg.grid.n},
          {"m", cfg.grid.m},
          {"s", P.s},
          {"p", num(P.p)},
          {"q", num(P.q)},
          {"weight", to_string(cfg.weight.kind)},
          {"window", to_string(cfg.profile)},
          {"bracket_mode", to_string(P.bracket_mode)}};
}

}  // namespace modspace::detail
