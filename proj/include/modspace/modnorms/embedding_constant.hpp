// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <utility>
#include <vector>

namespace modspace {

struct LatticeSeries {
  double value = 0.0;
  double partial = 0.0;  // sum over |k|_1 <= terms
  double tail = 0.0;     // analytic tail beyond
  long terms = 0;
};

// sum_{k in Z^n} <k>^{-a} with the l1 bracket: shells |k|_1 = j summed to
// `terms`, plus the tail integral from terms + 1/2. Throws
// ErrorKind::hypothesis (with growing partial sums in the message) when
// a <= n and the series diverges.
LatticeSeries lattice_bracket_series(int n, double a, long terms = 1000000);

// Partial sums at |k|_1 <= 10, 100, ..., used as divergence diagnostics.
std::vector<std::pair<long, double>> lattice_bracket_partial_sums(int n, double a, long up_to);

}  // namespace modspace
