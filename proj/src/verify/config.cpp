// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/verify/config.hpp"

#include <cmath>
#include <initializer_list>
#include <sstream>

#include "modspace/error.hpp"

namespace modspace {

namespace {

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(ErrorKind::config, path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(ErrorKind::config, (path.empty() ? key : path + "." + key) + ": unknown field");
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::config, (path.empty() ? std::string(key) : path + "." + key) + ": wrong type");
  }
}

// Accepts a number or the strings "inf" / "infinity".
double get_exponent(const json& j, const char* key, const std::string& path, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && (v == "inf" || v == "infinity")) return std::numeric_limits<double>::infinity();
  fail(ErrorKind::config, path + "." + key + ": expected a number or \"inf\"");
}

json exponent_json(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

BracketMode bracket_mode_from_string(const std::string& s) {
  if (s == to_string(BracketMode::l1_lattice)) return BracketMode::l1_lattice;
  if (s == to_string(BracketMode::l2_continuous)) return BracketMode::l2_continuous;
  fail(ErrorKind::config, "params.bracket_mode: unknown bracket mode '" + s + "'");
}

}  // namespace

double min_cell_side(const GridSpec& grid, int K, double a, RConvention conv) {
  const double r = conv == RConvention::paper ? std::sqrt(1.0 + std::pow(grid.n * K, 2.0)) : 1.0;
  return 1.0 / (a * r);
}

void require_cell_population(const GridSpec& grid, int K, double a, RConvention conv) {
  const double side = min_cell_side(grid, K, a, conv);
  if (side < 2.0 * grid.dx()) {
    std::ostringstream os;
    os << "params.a: reducing cells at |k|_inf = " << K << " have side " << side << " < 2 dx = " << 2.0 * grid.dx()
       << " and hold fewer than 2^n gridpoints (increase grid.N or use r_convention unit)";
    fail(ErrorKind::config, os.str());
  }
}

void ExperimentConfig::validate() const {
  grid.validate();
  if (K < 1) fail(ErrorKind::config, "window.K: must be >= 1");
  grid.require_window_safety(K);
  corpus.validate("corpus");
  if (corpus.safe_radius(grid.n) <= 0.0)
    fail(ErrorKind::config, "window.K: corpus radius K - sqrt(n) - 2 must be positive");
  weight.validate(grid.m, "weight");
  const auto& P = params;
  if (!std::isfinite(P.s)) fail(ErrorKind::config, "params.s: must be finite");
  if (!(P.p >= 1.0) || !std::isfinite(P.p)) fail(ErrorKind::config, "params.p: must lie in [1, inf)");
  if (!(P.q > 0.0)) fail(ErrorKind::config, "params.q: must lie in (0, inf]");
  if (!(P.q0 > 0.0)) fail(ErrorKind::config, "params.q0: must lie in (0, inf]");
  if (!(P.q1 > 0.0)) fail(ErrorKind::config, "params.q1: must lie in (0, inf]");
  if (!(P.q0 <= P.q1)) fail(ErrorKind::config, "params.q0: must not exceed params.q1");
  if (!(P.eps > 0.0) || !std::isfinite(P.eps)) fail(ErrorKind::config, "params.eps: must be positive");
  if (!(P.a >= std::sqrt(static_cast<double>(grid.n)) / 2.0) || !std::isfinite(P.a))
    fail(ErrorKind::config, "params.a: must be >= sqrt(n)/2");
  for (int d = 0; d < 2; ++d)
    if (std::abs(P.k[d]) > K || (d >= grid.n && P.k[d] != 0))
      fail(ErrorKind::config, "params.k: must satisfy |k|_inf <= window.K");
  if (input.empty()) fail(ErrorKind::config, "input: must not be empty");
  if (norm != "modulation" && norm != "averaged" && norm != "stft" && norm != "lp")
    fail(ErrorKind::config, "norm: expected modulation, averaged, stft or lp");
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig c;
  only_keys(j, "", {"grid", "window", "weight", "corpus", "params", "experiment", "input", "norm", "output"});
  try {
    if (j.contains("grid")) {
      const json& g = j["grid"];
      only_keys(g, "grid", {"n", "m", "N", "L"});
      c.grid.n = get(g, "n", "grid", c.grid.n);
      c.grid.m = get(g, "m", "grid", c.grid.m);
      const long long N = get<long long>(g, "N", "grid", static_cast<long long>(c.grid.N));
      if (N < 1) fail(ErrorKind::config, "grid.N must be a power of two >= 16 (got " + std::to_string(N) + ")");
      c.grid.N = static_cast<std::size_t>(N);
      c.grid.L = get(g, "L", "grid", c.grid.L);
    }
    if (j.contains("window")) {
      const json& w = j["window"];
      only_keys(w, "window", {"K", "profile"});
      c.K = get(w, "K", "window", c.K);
      if (w.contains("profile")) {
        try {
          c.profile = window_profile_from_string(get<std::string>(w, "profile", "window", ""));
        } catch (const Error& e) {
          fail(ErrorKind::config, std::string("window.profile: ") + e.what());
        }
      }
    }
    if (j.contains("weight")) {
      only_keys(j["weight"], "weight", {"kind", "alpha", "profile", "rotation_rate", "delta", "floor", "table"});
      c.weight = weight_spec_from_json(j["weight"], "weight");
    }
    if (j.contains("corpus")) {
      only_keys(j["corpus"], "corpus",
                {"seed", "size", "family", "center", "width", "frequency", "chirp", "amplitude", "band_limit"});
      c.corpus = corpus_spec_from_json(j["corpus"], "corpus");
    }
    if (j.contains("params")) {
      const json& p = j["params"];
      only_keys(p, "params", {"s", "p", "q", "eps", "q0", "q1", "a", "r_convention", "bracket_mode",
                              "reducing_method", "k"});
      auto& P = c.params;
      P.s = get(p, "s", "params", P.s);
      P.p = get_exponent(p, "p", "params", P.p);
      P.q = get_exponent(p, "q", "params", P.q);
      P.eps = get(p, "eps", "params", P.eps);
      P.q0 = get_exponent(p, "q0", "params", P.q0);
      P.q1 = get_exponent(p, "q1", "params", P.q1);
      P.a = get(p, "a", "params", P.a);
      if (p.contains("r_convention"))
        P.r_convention = r_convention_from_string(get<std::string>(p, "r_convention", "params", ""));
      if (p.contains("bracket_mode"))
        P.bracket_mode = bracket_mode_from_string(get<std::string>(p, "bracket_mode", "params", ""));
      if (p.contains("reducing_method")) {
        const auto m = get<std::string>(p, "reducing_method", "params", "");
        if (m != "default") P.reducing_method = reducing_method_from_string(m);
      }
      if (p.contains("k")) {
        const auto k = get<std::vector<int>>(p, "k", "params", {});
        if (k.empty() || k.size() > 2) fail(ErrorKind::config, "params.k: expected 1 or 2 integers");
        P.k = {k[0], k.size() > 1 ? k[1] : 0};
      }
    }
    c.experiment = get<std::string>(j, "experiment", "", c.experiment);
    c.input = get<std::string>(j, "input", "", c.input);
    c.norm = get<std::string>(j, "norm", "", c.norm);
    if (j.contains("output")) {
      only_keys(j["output"], "output", {"dir"});
      c.out_dir = get<std::string>(j["output"], "dir", "output", c.out_dir);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::config, std::string("malformed config: ") + e.what());
  }
  c.corpus.band_limit = c.K;
  c.validate();
  return c;
}

json to_json(const ExperimentConfig& c) {
  const auto& P = c.params;
  json params = {{"s", P.s},
                 {"p", exponent_json(P.p)},
                 {"q", exponent_json(P.q)},
                 {"eps", P.eps},
                 {"q0", exponent_json(P.q0)},
                 {"q1", exponent_json(P.q1)},
                 {"a", P.a},
                 {"r_convention", to_string(P.r_convention)},
                 {"bracket_mode", to_string(P.bracket_mode)},
                 {"reducing_method", P.reducing_method ? to_string(*P.reducing_method) : "default"},
                 {"k", c.grid.n == 1 ? json::array({P.k[0]}) : json::array({P.k[0], P.k[1]})}};
  return {{"grid", grid_to_json(c.grid)},
          {"window", {{"K", c.K}, {"profile", to_string(c.profile)}}},
          {"weight", to_json(c.weight)},
          {"corpus", to_json(c.corpus)},
          {"params", params},
          {"experiment", c.experiment},
          {"input", c.input},
          {"norm", c.norm},
          {"output", {{"dir", c.out_dir}}}};
}

}  // namespace modspace
