// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <span>

#include "modspace/reducing/reducing_operator.hpp"

namespace modspace {

struct StrongDoublingOptions {
  std::size_t cross_pairs = 10000;  // random cross-partition pairs in the base sample
  std::uint64_t seed = 4242;
  double stability = 0.20;          // allowed relative growth under enrichment
};

struct CellRef {
  std::size_t set = 0;
  std::size_t cell = 0;
};

struct StrongDoublingReport {
  double C_base = 0.0;      // over the base sample
  double C_estimate = 0.0;  // over the enriched sample
  std::size_t base_pairs = 0;
  std::size_t pairs = 0;
  CellRef worst_q, worst_p;
  bool stable = false;
  bool pass = false;
};

// |A_Q A_P^{-1}|^p / (max{(l(P)/l(Q))^n, (l(Q)/l(P))^{beta-n}} (1 + |x_Q - x_P| / max{l(P), l(Q)})^beta)
double strong_doubling_ratio(const ReducingOperatorSet& sq, std::size_t q, const ReducingOperatorSet& sp,
                             std::size_t p, double beta, double exponent);

// The base sample uses the first base_sets partitions (all pairs inside each,
// every pair touching the cells at the origin, and cross_pairs random
// pairs); the enriched sample uses every partition and twice the random
// pairs. Passes when the estimate is finite and grows by at most
// opts.stability.
StrongDoublingReport strong_doubling_check(std::span<const ReducingOperatorSet> sets, std::size_t base_sets,
                                           double beta, double p, const StrongDoublingOptions& opts = {});

}  // namespace modspace
