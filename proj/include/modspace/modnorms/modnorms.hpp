// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <limits>
#include <span>
#include <vector>

#include "modspace/freq/bracket.hpp"
#include "modspace/freq/stft.hpp"
#include "modspace/freq/window_family.hpp"
#include "modspace/reducing/reducing_operator.hpp"
#include "modspace/weights/matrix_weight.hpp"

namespace modspace {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct NormParams {
  double s = 0.0;
  double p = 2.0;  // [1, inf)
  double q = 2.0;  // (0, inf]; inf means supremum over k
  BracketMode bracket = BracketMode::l1_lattice;
  void validate() const;
};

// q' = q/(q-1) for q in (1, inf), 1 for q in (0, 1] and for q = inf.
double conjugate_exponent(double q);

// W^{-p'/p}; requires 1 < p < inf.
MatrixWeight dual_weight(const MatrixWeight& W, double p);

// (sum_k t_k^q)^{1/q}, or max_k t_k for q = inf, summed in index order.
double lq_combine(std::span<const double> terms, double q);

// Per-k data behind a modulation norm.
struct ModulationProfile {
  std::vector<LatticeIndex> k;
  std::vector<double> piece_norms;  // |W^{1/p} box_k f|_{L^p}
  std::vector<double> terms;        // <k>^s times the above
  double value = 0.0;
};

// Reducing operators for every k of a window family. Partitions only depend
// on r_k, so sets are shared between k with the same r_k.
class ReducingFamily {
 public:
  static ReducingFamily build(const MatrixWeight& W, double p, const WindowFamily& fam, double a, RConvention conv,
                              ReducingMethod method, const MveeOptions& opts = {});

  const ReducingOperatorSet& at(const LatticeIndex& k) const;
  std::span<const ReducingOperatorSet> sets() const { return sets_; }
  int K() const { return K_; }
  int n() const { return n_; }

  ReducingFamily inverse_transpose() const;
  // A_Q replaced by <k>^power A_Q at each k.
  ReducingFamily scaled_by_bracket(double power) const;

 private:
  std::size_t slot(const LatticeIndex& k) const;

  int K_ = 0;
  int n_ = 1;
  std::vector<std::size_t> slot_to_set_;
  std::vector<ReducingOperatorSet> sets_;
};

// (sum_{|k|_inf <= K} (<k>^s |W^{1/p} box_k f|_{L^p})^q)^{1/q}. W == nullptr
// means identity. Throws ErrorKind::truncation for fields that are not
// band-limit safe for the family.
ModulationProfile modulation_profile(const VectorField& f, const WindowFamily& fam, const MatrixWeight* W,
                                     const NormParams& params);
double modulation_norm(const VectorField& f, const WindowFamily& fam, const MatrixWeight* W, const NormParams& params);

// Same with |A_Q box_k f| averaged over the cells of k.
ModulationProfile averaged_modulation_profile(const VectorField& f, const WindowFamily& fam,
                                              const ReducingFamily& ops, const NormParams& params);
double averaged_modulation_norm(const VectorField& f, const WindowFamily& fam, const ReducingFamily& ops,
                                const NormParams& params);

// (dxi^n sum_{|xi|_inf <= K} (|W^{1/p} V_g f(., xi)|_{L^p} <xi>^s)^q)^{1/q},
// xi on the frequency lattice, <xi> with params.bracket.
double stft_modulation_norm(const VectorField& f, const WindowFamily& fam, const MatrixWeight* W,
                            const NormParams& params, const StftWindow& g);

struct SequenceFamily {
  std::vector<LatticeIndex> k;
  std::vector<VectorField> f;
};

// Inner norm of a sequence entry: identity, a matrix weight, or per-k
// reducing operators.
struct SequenceWeight {
  const MatrixWeight* W = nullptr;
  const ReducingFamily* ops = nullptr;
};

// (sum_k <k>^{sq} |f_k|^q_{L^p(weight)})^{1/q}.
double sequence_norm(const SequenceFamily& seq, double s, double p, double q, SequenceWeight weight = {},
                     BracketMode bracket = BracketMode::l1_lattice);

// sum_k <g_k, f_k> (bilinear).
cplx sequence_pairing(const SequenceFamily& g, const SequenceFamily& f);

}  // namespace modspace
