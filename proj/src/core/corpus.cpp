// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/core/corpus.hpp"

#include <cmath>
#include <random>

#include "modspace/core/fourier.hpp"
#include "modspace/error.hpp"

namespace modspace {
namespace {

constexpr std::pair<CorpusFamily, const char*> kFamilyNames[] = {
    {CorpusFamily::gaussian, "gaussian"},
    {CorpusFamily::modulated_gaussian, "modulated-gaussian"},
    {CorpusFamily::chirp, "chirp"},
    {CorpusFamily::random_bandlimited, "random-bandlimited"},
    {CorpusFamily::mixed, "mixed"},
};

// Drawn leakage above this is a rejected draw; below it the residual tail
// is removed by projecting onto the safe band.
constexpr double kRejectLeakage = 1e-6;
constexpr int kMaxAttempts = 20;

struct Atom {
  Point center{0.0, 0.0};
  Point freq{0.0, 0.0};
  double sigma = 1.0;
  double chirp = 0.0;
  cplx coeff{1.0, 0.0};
};

json atom_json(const Atom& a, int n) {
  auto vec = [n](const Point& p) { return n == 1 ? json::array({p[0]}) : json::array({p[0], p[1]}); };
  return {{"center", vec(a.center)}, {"frequency", vec(a.freq)}, {"sigma", a.sigma},
          {"chirp", a.chirp}, {"coeff", {a.coeff.real(), a.coeff.imag()}}};
}

cplx atom_value(const Atom& a, const Point& x, int n) {
  double r2 = 0.0, phase = 0.0;
  for (int d = 0; d < n; ++d) {
    const double y = x[d] - a.center[d];
    r2 += y * y;
    phase += a.freq[d] * x[d];
  }
  phase += 0.5 * a.chirp * r2;
  return a.coeff * std::exp(-0.5 * r2 / (a.sigma * a.sigma)) * std::polar(1.0, phase);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t item, int component) {
  std::seed_seq seq{seed, seed >> 32, item, static_cast<std::uint64_t>(component)};
  return std::mt19937_64(seq);
}

class Drawer {
 public:
  Drawer(const CorpusSpec& spec, std::uint64_t item, int component)
      : spec_(spec), rng_(make_rng(spec.seed, item, component)) {}

  double uniform(const std::array<double, 2>& r) { return std::uniform_real_distribution<double>(r[0], r[1])(rng_); }

  Atom atom(CorpusFamily fam, int n) {
    Atom a;
    for (int d = 0; d < n; ++d) a.center[d] = uniform(spec_.center);
    a.sigma = uniform(spec_.width);
    const double theta = uniform({0.0, 2.0 * 3.141592653589793});
    a.coeff = std::polar(1.0, theta);
    if (fam != CorpusFamily::gaussian)
      for (int d = 0; d < n; ++d) a.freq[d] = uniform(spec_.frequency);
    if (fam == CorpusFamily::chirp) a.chirp = uniform(spec_.chirp);
    return a;
  }

  cplx gaussian_coeff() {
    std::normal_distribution<double> g;
    return {g(rng_), g(rng_)};
  }

 private:
  const CorpusSpec& spec_;
  std::mt19937_64 rng_;
};

// Zeroes every frequency outside |xi|_inf <= radius.
void project_band(const GridSpec& g, std::span<cplx> s, double radius) {
  forward_samples(g, s);
  for (std::size_t x = 0; x < g.points(); ++x) {
    const Point xi = g.frequency(x);
    for (int d = 0; d < g.n; ++d)
      if (std::abs(xi[d]) > radius) {
        s[x] = 0.0;
        break;
      }
  }
  inverse_samples(g, s);
}

double leakage(const GridSpec& g, std::span<const cplx> s, double radius) {
  std::vector<cplx> t(s.begin(), s.end());
  forward_samples(g, t);
  double peak = 0.0, out = 0.0;
  for (std::size_t x = 0; x < g.points(); ++x) {
    const double a = std::abs(t[x]);
    peak = std::max(peak, a);
    const Point xi = g.frequency(x);
    for (int d = 0; d < g.n; ++d)
      if (std::abs(xi[d]) > radius) {
        out = std::max(out, a);
        break;
      }
  }
  return peak > 0.0 ? out / peak : 0.0;
}

}  // namespace

const char* to_string(CorpusFamily f) {
  for (const auto& [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "unknown";
}

CorpusFamily corpus_family_from_string(const std::string& s, const std::string& path) {
  for (const auto& [fam, name] : kFamilyNames)
    if (s == name) return fam;
  fail(ErrorKind::config, path + ": unknown corpus family '" + s + "'");
}

void CorpusSpec::validate(const std::string& path) const {
  if (size < 1) fail(ErrorKind::config, path + ".size: must be >= 1");
  auto range = [&](const std::array<double, 2>& r, const char* name, bool positive) {
    if (!std::isfinite(r[0]) || !std::isfinite(r[1]) || r[0] > r[1])
      fail(ErrorKind::config, path + "." + name + ": expected [lo, hi] with lo <= hi");
    if (positive && !(r[0] > 0.0)) fail(ErrorKind::config, path + "." + name + ": must be positive");
  };
  range(center, "center", false);
  range(width, "width", true);
  range(frequency, "frequency", false);
  range(chirp, "chirp", false);
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) fail(ErrorKind::config, path + ".amplitude: must be > 0");
  if (band_limit < 1) fail(ErrorKind::config, path + ".band_limit: must be >= 1");
}

double CorpusSpec::safe_radius(int n) const { return band_limit - std::sqrt(static_cast<double>(n)) - 2.0; }

CorpusSpec corpus_spec_from_json(const json& j, const std::string& path) {
  CorpusSpec s;
  if (!j.is_object()) fail(ErrorKind::config, path + ": expected an object");
  try {
    s.seed = j.value("seed", s.seed);
    s.size = j.value("size", s.size);
    if (j.contains("family")) s.family = corpus_family_from_string(j["family"].get<std::string>(), path + ".family");
    auto range = [&](const char* key, std::array<double, 2>& r) {
      if (!j.contains(key)) return;
      const auto v = j[key].get<std::vector<double>>();
      if (v.size() != 2) fail(ErrorKind::config, path + "." + key + ": expected [lo, hi]");
      r = {v[0], v[1]};
    };
    range("center", s.center);
    range("width", s.width);
    range("frequency", s.frequency);
    range("chirp", s.chirp);
    s.amplitude = j.value("amplitude", s.amplitude);
    s.band_limit = j.value("band_limit", s.band_limit);
  } catch (const json::exception& e) {
    fail(ErrorKind::config, path + ": " + e.what());
  }
  s.validate(path);
  return s;
}

json to_json(const CorpusSpec& s) {
  return {{"seed", s.seed}, {"size", s.size}, {"family", to_string(s.family)},
          {"center", s.center}, {"width", s.width}, {"frequency", s.frequency},
          {"chirp", s.chirp}, {"amplitude", s.amplitude}, {"band_limit", s.band_limit}};
}

Corpus generate_corpus_with_manifest(const CorpusSpec& spec, const GridSpec& grid) {
  spec.validate();
  grid.validate();
  const int n = grid.n;
  const double radius = spec.safe_radius(n);
  if (!(radius > 0.0)) fail(ErrorKind::config, "corpus.band_limit: K - sqrt(n) - 2 must be positive");
  Corpus out;
  out.manifest = {{"spec", to_json(spec)}, {"grid", grid_to_json(grid)}, {"items", json::array()}};
  static constexpr CorpusFamily kCycle[] = {CorpusFamily::gaussian, CorpusFamily::modulated_gaussian,
                                            CorpusFamily::chirp, CorpusFamily::random_bandlimited};
  for (std::size_t item = 0; item < spec.size; ++item) {
    const CorpusFamily fam = spec.family == CorpusFamily::mixed ? kCycle[item % 4] : spec.family;
    VectorField f(grid, Side::physical);
    json components = json::array();
    for (int c = 0; c < grid.m; ++c) {
      Drawer draw(spec, item, c);
      const int atoms = fam == CorpusFamily::random_bandlimited ? 3 : 1;
      std::vector<Atom> base;
      for (int a = 0; a < atoms; ++a) {
        Atom at = draw.atom(fam == CorpusFamily::random_bandlimited ? CorpusFamily::modulated_gaussian : fam, n);
        if (fam == CorpusFamily::random_bandlimited) at.coeff = draw.gaussian_coeff();
        base.push_back(at);
      }
      auto samples = f.component(c);
      bool accepted = false;
      int attempt = 0;
      std::vector<Atom> used = base;
      for (; attempt < kMaxAttempts && !accepted; ++attempt) {
        // Each retry pulls centre, modulation and chirp inwards and moves the
        // envelope width towards sqrt(L / radius), where boundary decay and
        // spectral decay balance.
        const double t = std::pow(0.7, attempt);
        const double sigma_star = std::sqrt(grid.L / radius);
        for (std::size_t a = 0; a < used.size(); ++a) {
          used[a] = base[a];
          used[a].sigma = std::pow(base[a].sigma, t) * std::pow(sigma_star, 1.0 - t);
          used[a].chirp = base[a].chirp * std::pow(0.5, attempt);
          for (int d = 0; d < n; ++d) {
            used[a].center[d] = base[a].center[d] * t;
            used[a].freq[d] = base[a].freq[d] * t;
          }
        }
        double peak = 0.0;
        for (std::size_t x = 0; x < grid.points(); ++x) {
          cplx v = 0.0;
          for (const Atom& a : used) v += atom_value(a, grid.coordinate(x), n);
          samples[x] = v;
          peak = std::max(peak, std::abs(v));
        }
        if (peak > 0.0)
          for (cplx& v : samples) v *= spec.amplitude / peak;
        accepted = leakage(grid, samples, radius) <= kRejectLeakage;
      }
      if (!accepted)
        fail(ErrorKind::numerical, "synthesis error: corpus item " + std::to_string(item) +
                                       " stays outside the safe band after " + std::to_string(kMaxAttempts) + " draws");
      project_band(grid, samples, radius);
      json atoms_json = json::array();
      for (const Atom& a : used) atoms_json.push_back(atom_json(a, n));
      components.push_back({{"atoms", atoms_json}, {"attempts", attempt}});
    }
    f.require_finite();
    out.manifest["items"].push_back({{"index", item}, {"family", to_string(fam)}, {"components", components}});
    out.fields.push_back(std::move(f));
  }
  return out;
}

std::vector<VectorField> generate_corpus(const CorpusSpec& spec, const GridSpec& grid) {
  return generate_corpus_with_manifest(spec, grid).fields;
}

VectorField rescaled_modulated(const GridSpec& grid, const std::function<cplx(const Point&)>& f,
                               const LatticeIndex& k, double a, double r) {
  if (!(a > 0.0) || !(r > 0.0)) fail(ErrorKind::parameter, "rescaled_modulated: a and r must be positive");
  return VectorField::sample(grid, Side::physical, [&](const Point& x, std::span<cplx> out) {
    double phase = 0.0;
    Point y{0.0, 0.0};
    for (int d = 0; d < grid.n; ++d) {
      phase += k[d] * x[d] / a;
      y[d] = x[d] / (a * r);
    }
    const cplx v = std::polar(1.0, phase) * f(y);
    for (auto& o : out) o = v;
  });
}

}  // namespace modspace
