// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/modnorms/modnorms.hpp"

#include <cmath>
#include <map>

#include "modspace/core/fourier.hpp"
#include "modspace/core/quadrature.hpp"
#include "modspace/error.hpp"
#include "modspace/freq/box_operator.hpp"
#include "modspace/parallel.hpp"

namespace modspace {

void NormParams::validate() const {
  if (!std::isfinite(s)) fail(ErrorKind::parameter, "smoothness s must be finite");
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::parameter, "p must lie in [1, inf)");
  if (!(q > 0.0)) fail(ErrorKind::parameter, "q must lie in (0, inf]");
}

double conjugate_exponent(double q) {
  if (!(q > 0.0)) fail(ErrorKind::parameter, "conjugate exponent needs q > 0");
  if (q <= 1.0 || std::isinf(q)) return 1.0;
  return q / (q - 1.0);
}

MatrixWeight dual_weight(const MatrixWeight& W, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorKind::parameter, "dual weight needs 1 < p < inf");
  return hpd_power(W, -conjugate_exponent(p) / p);
}

double lq_combine(std::span<const double> terms, double q) {
  double peak = 0.0;
  for (double t : terms) peak = std::max(peak, t);
  if (std::isinf(q) || peak == 0.0) return peak;
  std::vector<double> scaled(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) scaled[i] = std::pow(terms[i] / peak, q);
  return peak * std::pow(pairwise_sum(scaled), 1.0 / q);
}

ReducingFamily ReducingFamily::build(const MatrixWeight& W, double p, const WindowFamily& fam, double a,
                                     RConvention conv, ReducingMethod method, const MveeOptions& opts) {
  if (!W.grid().same_lattice(fam.grid())) fail(ErrorKind::contract, "weight and window family live on different grids");
  ReducingFamily out;
  out.K_ = fam.K();
  out.n_ = fam.grid().n;
  std::map<double, std::size_t> by_r;
  std::vector<CellPartition> parts;
  for (const auto& k : fam.indices()) {
    const double r = conv == RConvention::paper ? bracket(k, out.n_, BracketMode::l1_lattice) : 1.0;
    auto [it, inserted] = by_r.emplace(r, parts.size());
    if (inserted) parts.push_back(CellPartition::build(W.grid(), k, a, conv));
    out.slot_to_set_.push_back(it->second);
  }
  for (const auto& part : parts) out.sets_.push_back(ReducingOperatorSet::build(W, p, part, method, opts));
  return out;
}

std::size_t ReducingFamily::slot(const LatticeIndex& k) const {
  for (int d = 0; d < n_; ++d)
    if (k[d] < -K_ || k[d] > K_) fail(ErrorKind::parameter, "index error: k outside the reducing family");
  const std::size_t side = 2 * K_ + 1;
  const std::size_t a = static_cast<std::size_t>(k[0] + K_);
  return n_ == 1 ? a : a * side + static_cast<std::size_t>(k[1] + K_);
}

const ReducingOperatorSet& ReducingFamily::at(const LatticeIndex& k) const { return sets_[slot_to_set_[slot(k)]]; }

ReducingFamily ReducingFamily::inverse_transpose() const {
  ReducingFamily out = *this;
  for (auto& s : out.sets_) s = s.inverse_transpose();
  return out;
}

ReducingFamily ReducingFamily::scaled_by_bracket(double power) const {
  ReducingFamily out;
  out.K_ = K_;
  out.n_ = n_;
  std::map<std::pair<std::size_t, double>, std::size_t> made;
  for (const auto& k : lattice_cube(n_, K_)) {
    const std::size_t base = slot_to_set_[slot(k)];
    const double c = std::pow(bracket(k, n_, BracketMode::l1_lattice), power);
    auto [it, inserted] = made.emplace(std::make_pair(base, c), out.sets_.size());
    if (inserted) out.sets_.push_back(sets_[base].scaled(c));
    out.slot_to_set_.push_back(it->second);
  }
  return out;
}

namespace {

template <class InnerNorm>
ModulationProfile profile_with(const VectorField& f, const WindowFamily& fam, const NormParams& params,
                               InnerNorm&& inner) {
  params.validate();
  if (f.side() != Side::physical) fail(ErrorKind::contract, "modulation norms take physical-side fields");
  FrequencyPieces pieces(f, fam);
  require_band_limit_safe(pieces.spectrum(), fam);
  ModulationProfile prof;
  prof.k = fam.indices();
  prof.piece_norms.resize(prof.k.size());
  prof.terms.resize(prof.k.size());
  parallel_for(prof.k.size(), [&](std::size_t i) {
    const VectorField piece = pieces.piece(prof.k[i]);
    prof.piece_norms[i] = inner(prof.k[i], piece);
    prof.terms[i] = std::pow(bracket(prof.k[i], f.grid().n, params.bracket), params.s) * prof.piece_norms[i];
  });
  prof.value = lq_combine(prof.terms, params.q);
  return prof;
}

}  // namespace

ModulationProfile modulation_profile(const VectorField& f, const WindowFamily& fam, const MatrixWeight* W,
                                     const NormParams& params) {
  if (W) W->power(1.0 / params.p);
  return profile_with(f, fam, params, [&](const LatticeIndex&, const VectorField& piece) {
    return weighted_lp_norm(piece, W, params.p);
  });
}

double modulation_norm(const VectorField& f, const WindowFamily& fam, const MatrixWeight* W, const NormParams& params) {
  return modulation_profile(f, fam, W, params).value;
}

ModulationProfile averaged_modulation_profile(const VectorField& f, const WindowFamily& fam,
                                              const ReducingFamily& ops, const NormParams& params) {
  if (ops.K() < fam.K()) fail(ErrorKind::contract, "reducing family does not cover the window truncation");
  return profile_with(f, fam, params, [&](const LatticeIndex& k, const VectorField& piece) {
    return averaged_lp_norm(piece, ops.at(k), params.p);
  });
}

double averaged_modulation_norm(const VectorField& f, const WindowFamily& fam, const ReducingFamily& ops,
                                const NormParams& params) {
  return averaged_modulation_profile(f, fam, ops, params).value;
}

double stft_modulation_norm(const VectorField& f, const WindowFamily& fam, const MatrixWeight* W,
                            const NormParams& params, const StftWindow& g) {
  params.validate();
  if (f.side() != Side::physical) fail(ErrorKind::contract, "modulation norms take physical-side fields");
  const GridSpec& grid = f.grid();
  if (!grid.same_lattice(fam.grid())) fail(ErrorKind::contract, "field and window family live on different grids");
  require_band_limit_safe(fourier_transform(f, Direction::forward), fam);
  if (W) W->power(1.0 / params.p);
  const int reach = static_cast<int>(std::floor(fam.K() / grid.dxi() + 1e-9));
  const auto xis = lattice_cube(grid.n, reach);
  StftPlan plan(grid, g);
  const auto fd = plan.dft(f);
  std::vector<double> terms(xis.size());
  parallel_for(xis.size(), [&](std::size_t i) {
    const VectorField v = plan.at_from_dft(fd, xis[i]);
    const Point xi{xis[i][0] * grid.dxi(), grid.n == 2 ? xis[i][1] * grid.dxi() : 0.0};
    terms[i] = weighted_lp_norm(v, W, params.p) * std::pow(bracket(xi, grid.n, params.bracket), params.s);
  });
  if (std::isinf(params.q)) return lq_combine(terms, params.q);
  return lq_combine(terms, params.q) * std::pow(grid.freq_cell_volume(), 1.0 / params.q);
}

double sequence_norm(const SequenceFamily& seq, double s, double p, double q, SequenceWeight weight,
                     BracketMode mode) {
  if (!(q > 0.0)) fail(ErrorKind::parameter, "sequence norm needs q in (0, inf]");
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::parameter, "sequence norm needs p in [1, inf)");
  if (seq.k.size() != seq.f.size()) fail(ErrorKind::contract, "sequence indices and entries differ in length");
  for (std::size_t i = 1; i < seq.f.size(); ++i)
    if (!(seq.f[i].grid() == seq.f[0].grid())) fail(ErrorKind::contract, "sequence entries live on different grids");
  std::vector<double> terms(seq.f.size());
  parallel_for(seq.f.size(), [&](std::size_t i) {
    const double inner = weight.ops ? averaged_lp_norm(seq.f[i], weight.ops->at(seq.k[i]), p)
                                    : weighted_lp_norm(seq.f[i], weight.W, p);
    terms[i] = std::pow(bracket(seq.k[i], seq.f[i].grid().n, mode), s) * inner;
  });
  return lq_combine(terms, q);
}

cplx sequence_pairing(const SequenceFamily& g, const SequenceFamily& f) {
  if (g.k != f.k) fail(ErrorKind::contract, "paired sequences have different index sets");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.f.size(); ++i) s += bilinear_pairing(f.f[i], g.f[i]);
  return s;
}

}  // namespace modspace
