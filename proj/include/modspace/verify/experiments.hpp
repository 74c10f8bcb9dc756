// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>
#include <vector>

#include "modspace/verify/config.hpp"
#include "modspace/verify/report.hpp"

namespace modspace {

// Tolerances shared by every experiment.
inline constexpr double kDriftTolerance = 0.10;      // band drift under N->2N, K->K+4
inline constexpr double kExactTolerance = 1e-12;     // relative slack of exact inequalities
inline constexpr double kSaturationTolerance = 1e-6;
inline constexpr double kReconstructionTolerance = 1e-8;
inline constexpr double kStftEnvelope = 25.0;        // C2 / C1, frozen from the W = I, p = q = 2 pilot
inline constexpr double kTrendTolerance = 0.25;      // |d log ratio / d log <k>|
inline constexpr std::size_t kMinCorpus = 10;

// Two-sided ratio band of the window-family norms for cfg.profile against
// `other`. Control: `other` with the members next to k = (1, 0) zeroed.
VerificationReport verify_window_independence(const ExperimentConfig& cfg, WindowProfile other);

// Box-based norm against the Gaussian-window STFT norm.
VerificationReport verify_stft_equivalence(const ExperimentConfig& cfg);

// Box-based norm against the reducing-operator norm. Control: operators
// rescaled by <k>, which breaks k-uniformity.
VerificationReport verify_averaging_equivalence(const ExperimentConfig& cfg);

// Canonical decomposition f_k = sum_{l in Lambda} box_{k+l} f.
VerificationReport verify_decomposition(const ExperimentConfig& cfg);

// q-monotonicity over q in {1, 1.5, 2, 4, inf} plus (q0, q1).
VerificationReport verify_embedding_monotone(const ExperimentConfig& cfg);

// |f|_{s, q1} <= (sum_k <k>^{-eps q1})^{1/q1} |f|_{s+eps, inf}. Throws
// ErrorKind::hypothesis when eps q1 <= n.
VerificationReport verify_embedding_eps(const ExperimentConfig& cfg);

// M^0_{p,1}(W) -> L^p(W) -> M^0_{p,inf}(W).
VerificationReport verify_sandwich(const ExperimentConfig& cfg);

// Sequence-level Hoelder bound and saturation, modulation-level pairing
// bound. Throws ErrorKind::hypothesis unless 1 < p, q < inf.
VerificationReport verify_duality(const ExperimentConfig& cfg);

struct ExperimentInfo {
  const char* id;
  const char* summary;
};

const std::vector<ExperimentInfo>& experiment_list();

// Dispatches on id, fills params and runtime. Unknown ids are config errors.
VerificationReport run_experiment(const std::string& id, const ExperimentConfig& cfg);

}  // namespace modspace
