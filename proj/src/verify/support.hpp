// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "modspace/freq/window_family.hpp"
#include "modspace/modnorms/modnorms.hpp"
#include "modspace/verify/config.hpp"
#include "modspace/verify/report.hpp"

namespace modspace::detail {

struct Scale {
  std::string label;
  GridSpec grid;
  int K = 0;
};

// base, N->2N and K->K+4. The last one doubles N until the grid hosts K+4
// and `fits` accepts it.
using ScaleFilter = std::function<bool(const GridSpec&, int)>;
std::vector<Scale> refinement_scales(const ExperimentConfig& cfg, const ScaleFilter& fits = {});

// Ratio samples with the 0/0 guard applied.
struct Band {
  std::vector<double> ratios;
  std::size_t excluded = 0;
  double lo = 0.0;
  double hi = 0.0;
};

// num/den; 0/0 is dropped, x/0 is +inf.
void push_ratio(Band& b, double num, double den);
void close_band(Band& b);

// Stores the base band as report ratios / C_min / C_max, one refinement
// step per scale and a drift check per refined scale. With only_max the
// drift looks at the upper end alone.
void record_refinement(VerificationReport& r, const std::string& what, const std::vector<Scale>& scales,
                       const std::vector<Band>& bands, bool primary, bool only_max = false);

double relative_drift(double base, double refined);

// The corpus at another resolution; band_limit stays at cfg.K so every
// scale sees the same functions.
std::vector<VectorField> corpus_on(const ExperimentConfig& cfg, const GridSpec& grid);
void require_corpus_size(const ExperimentConfig& cfg);

NormParams norm_params(const ExperimentParams& p, double s, double q);

// W = I, s = 0, p = q = 2: the setting the |Lambda| envelopes refer to.
bool plain_setting(const ExperimentConfig& cfg);

// Exactly band-limited field with spectrum cos^2(pi |xi - c| / (2 radius))
// inside the ball, one scaled copy per component.
VectorField spectral_bump(const GridSpec& grid, const Point& center, double radius);

// Family with every phi_j, |j - k0|_inf <= 1, replaced by zero: a hole
// in the partition of unity around k0.
WindowFamily broken_family(const WindowFamily& fam, const LatticeIndex& k0);

// Radius of a bump around k0 = (1, 0) that only the zeroed members reach.
double control_bump_radius(int n);

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y);

VectorField apply_field(const MatrixField& M, const VectorField& f);
VectorField conjugate(const VectorField& f);

json hypothesis_json(const ExperimentConfig& cfg, const std::string& statement);

}  // namespace modspace::detail
