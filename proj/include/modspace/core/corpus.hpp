// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "modspace/core/io.hpp"

namespace modspace {

enum class CorpusFamily { gaussian, modulated_gaussian, chirp, random_bandlimited, mixed };

const char* to_string(CorpusFamily f);
CorpusFamily corpus_family_from_string(const std::string& s, const std::string& path = "corpus.family");

struct CorpusSpec {
  std::uint64_t seed = 7;
  std::size_t size = 20;
  CorpusFamily family = CorpusFamily::gaussian;
  std::array<double, 2> center{-2.0, 2.0};     // per-axis centre range
  std::array<double, 2> width{0.7, 1.4};       // Gaussian envelope sigma range
  std::array<double, 2> frequency{-3.0, 3.0};  // per-axis modulation range
  std::array<double, 2> chirp{-0.3, 0.3};      // chirp rate range
  double amplitude = 1.0;                      // sup-norm bound
  int band_limit = 16;                         // window truncation K the corpus must respect

  void validate(const std::string& path = "corpus") const;
  // K - sqrt(n) - 2: spectra are confined to |xi|_inf <= this radius.
  double safe_radius(int n) const;
};

CorpusSpec corpus_spec_from_json(const json& j, const std::string& path = "corpus");
json to_json(const CorpusSpec& s);

struct Corpus {
  std::vector<VectorField> fields;
  json manifest;  // per-item family and drawn parameters
};

// Deterministic in spec.seed; the drawn parameters do not depend on N, so
// refined grids reproduce the same functions. Throws ErrorKind::numerical
// (synthesis error) when no band-limit-safe draw is found.
Corpus generate_corpus_with_manifest(const CorpusSpec& spec, const GridSpec& grid);
std::vector<VectorField> generate_corpus(const CorpusSpec& spec, const GridSpec& grid);

// h(x) = e^{i k.x / a} f(x / (a r)), one copy of f per component.
VectorField rescaled_modulated(const GridSpec& grid, const std::function<cplx(const Point&)>& f,
                               const LatticeIndex& k, double a, double r);

}  // namespace modspace
