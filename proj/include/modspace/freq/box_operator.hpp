// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "modspace/freq/window_family.hpp"

namespace modspace {

// box_k f = F^{-1} phi_k F f. The adjoint F phi_k F^{-1} is the multiplier
// phi_k(-xi), which is what adjoint = true applies.
VectorField box_operator(const VectorField& f, const LatticeIndex& k, const WindowFamily& fam,
                         bool adjoint = false);

// Transforms f once and hands out box_k f for any k of the family.
class FrequencyPieces {
 public:
  FrequencyPieces(const VectorField& f, const WindowFamily& fam);

  const VectorField& spectrum() const { return spectrum_; }
  const WindowFamily& family() const { return *fam_; }
  VectorField piece(const LatticeIndex& k, bool adjoint = false) const;

 private:
  const WindowFamily* fam_;
  VectorField spectrum_;
};

// paper_bk: B(k<k>, sqrt(n)<k>); unit_scale: B(k, sqrt(n)).
enum class BandConvention { paper_bk, unit_scale };

const char* to_string(BandConvention c);

struct BandLimitResult {
  bool accepted = false;
  double mass_fraction = 1.0;  // smallest over components with nonzero mass
};

BandLimitResult band_limit_check(const VectorField& f, const LatticeIndex& k, BandConvention convention,
                                 double threshold = 0.9999);

// max |F f| outside |xi|_inf <= radius, relative to max |F f|.
double spectral_leakage(const VectorField& spectrum, double radius);

// Relative spectral amplitude a field may carry where the family's partition
// of unity is incomplete.
inline constexpr double kTruncationTolerance = 1e-12;

// Throws ErrorKind::truncation unless the spectrum vanishes (relative
// kTruncationTolerance) outside |xi|_inf <= K - sqrt(n).
void require_band_limit_safe(const VectorField& spectrum, const WindowFamily& fam);

}  // namespace modspace
