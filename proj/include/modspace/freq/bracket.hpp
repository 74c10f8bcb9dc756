// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include "modspace/core/grid.hpp"

namespace modspace {

// l1_lattice: |k| = |k_1| + ... + |k_n|; l2_continuous: Euclidean |k|.
enum class BracketMode { l1_lattice, l2_continuous };

const char* to_string(BracketMode m);

// (1 + |k|^2)^{1/2}.
double bracket(const LatticeIndex& k, int n, BracketMode mode = BracketMode::l1_lattice);
double bracket(const Point& xi, int n, BracketMode mode = BracketMode::l2_continuous);

// All k with |k|_inf <= K, row-major with axis 0 slowest.
std::vector<LatticeIndex> lattice_cube(int n, int K);

// {l in Z^n : |l|_2 <= 2 sqrt(2n)}.
std::vector<LatticeIndex> lambda_set(int n);

}  // namespace modspace
