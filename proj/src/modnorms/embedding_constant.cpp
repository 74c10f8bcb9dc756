// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/modnorms/embedding_constant.hpp"

#include <cmath>
#include <sstream>

#include "modspace/error.hpp"

namespace modspace {
namespace {

// Lattice points with |k|_1 = j.
double shell(int n, long j) {
  if (j == 0) return 1.0;
  return n == 1 ? 2.0 : 4.0 * static_cast<double>(j);
}

double term(int n, double a, long j) {
  const double jj = static_cast<double>(j);
  return shell(n, j) * std::pow(1.0 + jj * jj, -0.5 * a);
}

// int_T^inf c_n(t) (1 + t^2)^{-a/2} dt via (1 + t^-2)^{-a/2} = sum_i binom(-a/2, i) t^{-2i}.
double tail_integral(int n, double a, double T) {
  const double lead = n == 1 ? 2.0 : 4.0;
  const double shift = n == 1 ? 0.0 : 1.0;  // c_2(t) = 4t adds one power
  double binom = 1.0, sum = 0.0;
  for (int i = 0; i < 12; ++i) {
    const double e = a + 2.0 * i - 1.0 - shift;
    sum += binom * std::pow(T, -e) / e;
    binom *= (-0.5 * a - i) / (i + 1.0);
  }
  return lead * sum;
}

}  // namespace

std::vector<std::pair<long, double>> lattice_bracket_partial_sums(int n, double a, long up_to) {
  std::vector<std::pair<long, double>> out;
  double s = 0.0;
  long next = 10;
  for (long j = 0; j <= up_to; ++j) {
    s += term(n, a, j);
    if (j == next) {
      out.emplace_back(j, s);
      next *= 10;
    }
  }
  return out;
}

LatticeSeries lattice_bracket_series(int n, double a, long terms) {
  if (n < 1 || n > 2) fail(ErrorKind::parameter, "lattice series: n must be 1 or 2");
  if (!std::isfinite(a)) fail(ErrorKind::parameter, "lattice series: exponent must be finite");
  if (a <= n) {
    std::ostringstream os;
    os << "eps*q1 = " << a << " <= n = " << n
       << ", so the series sum_k <k>^(-eps*q1) diverges; partial sums:";
    for (const auto& [j, s] : lattice_bracket_partial_sums(n, a, 100000)) os << " |k|<=" << j << ": " << s << ";";
    fail(ErrorKind::hypothesis, os.str());
  }
  LatticeSeries r;
  r.terms = terms;
  // Smallest terms first keeps the rounding error small.
  for (long j = terms; j >= 0; --j) r.partial += term(n, a, j);
  r.tail = tail_integral(n, a, static_cast<double>(terms) + 0.5);
  r.value = r.partial + r.tail;
  return r;
}

}  // namespace modspace
