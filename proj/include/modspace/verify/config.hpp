// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <optional>
#include <string>

#include "modspace/core/corpus.hpp"
#include "modspace/freq/bracket.hpp"
#include "modspace/freq/window_family.hpp"
#include "modspace/reducing/cell_partition.hpp"
#include "modspace/reducing/reducing_operator.hpp"
#include "modspace/weights/weight_spec.hpp"

namespace modspace {

struct ExperimentParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  double eps = 2.0;
  double q0 = 1.0;
  double q1 = 1.0;
  double a = 1.0;
  RConvention r_convention = RConvention::unit;
  BracketMode bracket_mode = BracketMode::l1_lattice;
  std::optional<ReducingMethod> reducing_method;  // unset: moment at p = 2, mvee otherwise
  LatticeIndex k{0, 0};                           // cell index for `reduce`

  ReducingMethod method() const { return reducing_method.value_or(default_reducing_method(p)); }
};

struct ExperimentConfig {
  GridSpec grid{1, 1, 256, 12.0};
  int K = 16;
  WindowProfile profile = WindowProfile::smooth_bump;
  WeightSpec weight;
  CorpusSpec corpus;
  ExperimentParams params;
  std::string experiment;
  std::string input = "corpus";  // `norm` input: corpus, zero, or a vector-field file
  std::string norm = "modulation";
  std::string out_dir = "out";

  // Cross-field checks that need no computation: grid, window safety,
  // corpus, weight and scalar ranges. Throws ErrorKind::config naming the
  // offending field.
  void validate() const;
};

// Missing fields keep their defaults; unknown fields are rejected.
// corpus.band_limit always follows window.K.
ExperimentConfig experiment_config_from_json(const json& j);
json to_json(const ExperimentConfig& c);

// Smallest side of an unclipped reducing cell for k up to K.
double min_cell_side(const GridSpec& grid, int K, double a, RConvention conv);

// Throws ErrorKind::config unless cells for every |k|_inf <= K hold at least
// 2^n gridpoints.
void require_cell_population(const GridSpec& grid, int K, double a, RConvention conv);

}  // namespace modspace
