// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/freq/box_operator.hpp"

#include <cmath>
#include <sstream>

#include "modspace/core/fourier.hpp"
#include "modspace/error.hpp"
#include "modspace/freq/bracket.hpp"

namespace modspace {
namespace {

// Frequency-lattice index of -xi for the sample at flat, if it exists.
bool mirrored(const GridSpec& g, std::uint32_t flat, std::size_t& out) {
  const auto idx = g.unflatten(flat);
  const long half = static_cast<long>(g.N / 2);
  LatticeIndex j{0, 0};
  for (int d = 0; d < g.n; ++d) j[d] = static_cast<int>(-(static_cast<long>(idx[d]) - half));
  return g.frequency_index(j, out);
}

}  // namespace

const char* to_string(BandConvention c) { return c == BandConvention::paper_bk ? "paper-Bk" : "unit-scale"; }

FrequencyPieces::FrequencyPieces(const VectorField& f, const WindowFamily& fam)
    : fam_(&fam), spectrum_(fourier_transform(f, Direction::forward)) {
  if (!f.grid().same_lattice(fam.grid())) fail(ErrorKind::contract, "field and window family live on different grids");
}

VectorField FrequencyPieces::piece(const LatticeIndex& k, bool adjoint) const {
  const WindowPiece& w = fam_->piece(k);
  const GridSpec& g = spectrum_.grid();
  // Filled with spectral samples, then transformed in place to physical.
  VectorField out(g, Side::physical);
  for (int c = 0; c < g.m; ++c) {
    auto src = spectrum_.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < w.flat.size(); ++i) {
      std::size_t at = w.flat[i];
      if (adjoint && !mirrored(g, w.flat[i], at)) continue;
      dst[at] = src[at] * w.value[i];
    }
    inverse_samples(g, dst);
  }
  return out;
}

VectorField box_operator(const VectorField& f, const LatticeIndex& k, const WindowFamily& fam, bool adjoint) {
  if (f.side() != Side::physical) fail(ErrorKind::contract, "box_operator takes a physical-side field");
  fam.slot(k);
  return FrequencyPieces(f, fam).piece(k, adjoint);
}

BandLimitResult band_limit_check(const VectorField& f, const LatticeIndex& k, BandConvention convention,
                                 double threshold) {
  const GridSpec& g = f.grid();
  const VectorField spec = f.side() == Side::physical ? fourier_transform(f, Direction::forward) : f;
  const double scale = convention == BandConvention::paper_bk ? bracket(k, g.n, BracketMode::l1_lattice) : 1.0;
  const double radius = std::sqrt(static_cast<double>(g.n)) * scale;
  BandLimitResult r;
  for (int c = 0; c < g.m; ++c) {
    double total = 0.0, inside = 0.0;
    for (std::size_t x = 0; x < g.points(); ++x) {
      const double e = std::norm(spec.at(c, x));
      total += e;
      const Point xi = g.frequency(x);
      double d2 = 0.0;
      for (int d = 0; d < g.n; ++d) d2 += (xi[d] - k[d] * scale) * (xi[d] - k[d] * scale);
      if (d2 <= radius * radius) inside += e;
    }
    if (total > 0.0) r.mass_fraction = std::min(r.mass_fraction, inside / total);
  }
  r.accepted = r.mass_fraction >= threshold;
  return r;
}

double spectral_leakage(const VectorField& spectrum, double radius) {
  const GridSpec& g = spectrum.grid();
  double peak = 0.0, outside = 0.0;
  for (int c = 0; c < g.m; ++c)
    for (std::size_t x = 0; x < g.points(); ++x) {
      const double a = std::abs(spectrum.at(c, x));
      peak = std::max(peak, a);
      const Point xi = g.frequency(x);
      bool in = true;
      for (int d = 0; d < g.n; ++d) in = in && std::abs(xi[d]) <= radius;
      if (!in) outside = std::max(outside, a);
    }
  return peak > 0.0 ? outside / peak : 0.0;
}

void require_band_limit_safe(const VectorField& spectrum, const WindowFamily& fam) {
  const double radius = fam.K() - std::sqrt(static_cast<double>(fam.grid().n));
  const double leak = spectral_leakage(spectrum, radius);
  if (leak > kTruncationTolerance) {
    std::ostringstream os;
    os << "field is not band-limit safe: relative spectral amplitude " << leak << " beyond |xi|_inf = " << radius
       << " (K - sqrt(n)); refusing to truncate";
    fail(ErrorKind::truncation, os.str());
  }
}

}  // namespace modspace
