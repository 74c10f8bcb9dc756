// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/freq/bracket.hpp"

#include <cmath>
#include <cstdlib>

#include "modspace/error.hpp"

namespace modspace {

const char* to_string(BracketMode m) {
  return m == BracketMode::l1_lattice ? "l1-lattice" : "l2-continuous";
}

double bracket(const LatticeIndex& k, int n, BracketMode mode) {
  double r = 0.0;
  if (mode == BracketMode::l1_lattice) {
    for (int d = 0; d < n; ++d) r += std::abs(k[d]);
    return std::sqrt(1.0 + r * r);
  }
  for (int d = 0; d < n; ++d) r += static_cast<double>(k[d]) * k[d];
  return std::sqrt(1.0 + r);
}

double bracket(const Point& xi, int n, BracketMode mode) {
  double r = 0.0;
  if (mode == BracketMode::l1_lattice) {
    for (int d = 0; d < n; ++d) r += std::abs(xi[d]);
    return std::sqrt(1.0 + r * r);
  }
  for (int d = 0; d < n; ++d) r += xi[d] * xi[d];
  return std::sqrt(1.0 + r);
}

std::vector<LatticeIndex> lattice_cube(int n, int K) {
  if (n < 1 || n > 2) fail(ErrorKind::parameter, "lattice dimension must be 1 or 2");
  if (K < 0) fail(ErrorKind::parameter, "lattice truncation must be >= 0");
  std::vector<LatticeIndex> out;
  for (int a = -K; a <= K; ++a) {
    if (n == 1) {
      out.push_back({a, 0});
      continue;
    }
    for (int b = -K; b <= K; ++b) out.push_back({a, b});
  }
  return out;
}

std::vector<LatticeIndex> lambda_set(int n) {
  const double radius = 2.0 * std::sqrt(2.0 * n);
  const int reach = static_cast<int>(std::ceil(radius));
  std::vector<LatticeIndex> out;
  for (const auto& l : lattice_cube(n, reach)) {
    double r2 = 0.0;
    for (int d = 0; d < n; ++d) r2 += static_cast<double>(l[d]) * l[d];
    // Integer radii squared are exact; the slack only guards the sqrt.
    if (r2 <= radius * radius + 1e-9) out.push_back(l);
  }
  return out;
}

}  // namespace modspace
