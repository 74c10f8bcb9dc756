// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "modspace/cli/cli.hpp"
#include "modspace/error.hpp"
#include "modspace/freq/stft.hpp"
#include "modspace/modnorms/modnorms.hpp"
#include "modspace/parallel.hpp"
#include "modspace/core/quadrature.hpp"
#include "modspace/weights/characteristics.hpp"
#include "modspace/verify/experiments.hpp"

namespace modspace::cli {

namespace {

std::string decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  std::string config;
  std::string out;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::string experiment;
  std::vector<std::string> reports;
};

ExperimentConfig configured(const Options& o) {
  if (o.config.empty()) fail(ErrorKind::config, "--config: this command needs a config file");
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) cfg.corpus.seed = *o.seed;
  if (!o.out.empty()) cfg.out_dir = o.out;
  return cfg;
}

std::vector<VectorField> norm_inputs(const ExperimentConfig& cfg) {
  if (cfg.input == "corpus") return generate_corpus(cfg.corpus, cfg.grid);
  if (cfg.input == "zero") return {VectorField(cfg.grid, Side::physical)};
  VectorField f = read_vector_field(cfg.input);
  if (!(f.grid() == cfg.grid)) fail(ErrorKind::config, "input: field grid differs from grid in the config");
  return {std::move(f)};
}

int cmd_norm(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = configured(o);
  const auto& P = cfg.params;
  const auto fam = WindowFamily::build(cfg.grid, cfg.K, cfg.profile);
  const MatrixWeight W = make_weight(cfg.weight, cfg.grid);
  const NormParams np{P.s, P.p, P.q, P.bracket_mode};
  std::optional<ReducingFamily> ops;
  if (cfg.norm == "averaged") {
    require_cell_population(cfg.grid, cfg.K, P.a, P.r_convention);
    ops = ReducingFamily::build(W, P.p, fam, P.a, P.r_convention, P.method());
  }
  const auto g = gaussian_window(cfg.grid.n);
  const auto inputs = norm_inputs(cfg);
  json values = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    double v = 0.0;
    if (cfg.norm == "modulation") v = modulation_norm(inputs[i], fam, &W, np);
    else if (cfg.norm == "averaged") v = averaged_modulation_norm(inputs[i], fam, *ops, np);
    else if (cfg.norm == "stft") v = stft_modulation_norm(inputs[i], fam, &W, np, g);
    else v = weighted_lp_norm(inputs[i], &W, P.p);
    out << cfg.norm << "[" << i << "] = " << decimal(v) << '\n';
    values.push_back(v);
  }
  if (!o.out.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream js(std::filesystem::path(cfg.out_dir) / "norms.json");
    js << json{{"norm", cfg.norm}, {"params", to_json(cfg)}, {"values", values}}.dump(2) << '\n';
  }
  return 0;
}

int cmd_ap(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = configured(o);
  const MatrixWeight W = make_weight(cfg.weight, cfg.grid);
  const auto cubes = CubeFamily::shifted_dyadic(cfg.grid);
  const double p = cfg.params.p;
  ApEstimate est;
  if (p == 1.0) {
    if (cfg.grid.m != 1) fail(ErrorKind::config, "params.p: A_1 is only computed for scalar weights (grid.m = 1)");
    std::vector<double> w(cfg.grid.points());
    for (std::size_t x = 0; x < w.size(); ++x) w[x] = W.samples().entry(0, 0, x).real();
    est = scalar_ap_characteristic(w, cubes, p);
  } else {
    est = matrix_ap_characteristic(W, p, cubes);
  }
  const Point c = cubes.center(est.worst);
  out << "A_p characteristic (p = " << decimal(p) << ", " << cubes.size() << " cubes) = " << decimal(est.value)
      << '\n'
      << "worst cube: centre (" << c[0] << ", " << c[1] << "), side " << cubes.side(est.worst) << '\n';
  return 0;
}

int cmd_doubling(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = configured(o);
  const MatrixWeight W = make_weight(cfg.weight, cfg.grid);
  const auto cubes = CubeFamily::shifted_dyadic(cfg.grid);
  const auto d = doubling_exponent(W, cfg.params.p, cubes);
  out << "doubling constant C = " << decimal(d.C) << '\n' << "doubling exponent beta = " << decimal(d.beta) << '\n';
  return 0;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = configured(o);
  const auto& P = cfg.params;
  const MatrixWeight W = make_weight(cfg.weight, cfg.grid);
  const auto part = CellPartition::build(cfg.grid, P.k, P.a, P.r_convention);
  const auto ops = ReducingOperatorSet::build(W, P.p, part, P.method());
  std::filesystem::create_directories(cfg.out_dir);
  std::string name = "reducing_k" + std::to_string(P.k[0]);
  if (cfg.grid.n == 2) name += "_" + std::to_string(P.k[1]);
  const std::string path = (std::filesystem::path(cfg.out_dir) / (name + ".bin")).string();
  write_reducing_set(path, ops);
  out << ops.size() << " cells, side " << decimal(part.side()) << ", method " << to_string(ops.method()) << '\n'
      << "wrote " << path << '\n';
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = configured(o);
  const std::string id = o.experiment.empty() ? cfg.experiment : o.experiment;
  if (id.empty()) fail(ErrorKind::config, "experiment: no experiment id given");
  const VerificationReport r = run_experiment(id, cfg);
  const std::string path = write_report(r, cfg.out_dir);
  for (const auto& c : r.checks)
    out << (c.pass ? "  ok   " : "  FAIL ") << c.name << ": " << decimal(c.value) << " (limit " << decimal(c.limit)
        << ")\n";
  for (const auto& c : r.controls) out << (c.pass ? "  FAIL " : "  ok   ") << "control '" << c.name << "' rejected\n";
  out << id << ": " << (r.pass ? "PASS" : "FAIL") << " C in [" << decimal(r.C_min) << ", " << decimal(r.C_max)
      << "], report " << path << '\n';
  return r.pass ? 0 : 1;
}

int cmd_report(const Options& o, std::ostream& out) {
  std::vector<std::string> sources = o.reports;
  const std::string dir = o.out.empty() ? "out" : o.out;
  if (sources.empty()) sources.push_back(dir);
  std::vector<std::string> files;
  for (const auto& s : sources) {
    if (std::filesystem::is_directory(s)) {
      for (const auto& e : std::filesystem::directory_iterator(s))
        if (e.path().extension() == ".json" && e.path().filename() != "summary.json" &&
            e.path().filename() != "norms.json")
          files.push_back(e.path().string());
    } else {
      files.push_back(s);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) fail(ErrorKind::config, "report: no report files found");
  std::vector<VerificationReport> reports;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) fail(ErrorKind::io, "cannot open " + f);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::config, f + ": not valid JSON (" + e.what() + ")");
    }
    reports.push_back(report_from_json(j));
  }
  const auto summary = summarize_reports(reports);
  out << summary.table;
  std::filesystem::create_directories(dir);
  std::ofstream js(std::filesystem::path(dir) / "summary.json");
  js << summary.merged.dump(2) << '\n';
  return summary.all_pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"modspace: modulation spaces with matrix weights", "modspace"};
  app.require_subcommand(1, 1);
  Options o;
  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config, "experiment config (JSON)");
    if (needs_config) c->required();
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--threads", o.threads, "worker threads (default: MODSPACE_THREADS or all cores)");
    sub->add_option("--seed", o.seed, "corpus seed override");
  };
  common(app.add_subcommand("norm", "print modulation norms of the configured input"), true);
  common(app.add_subcommand("ap", "estimate the A_p characteristic of the weight"), true);
  common(app.add_subcommand("doubling", "estimate the doubling constant and exponent"), true);
  common(app.add_subcommand("reduce", "build and write reducing operators for params.k"), true);
  auto* verify = app.add_subcommand("verify", "run one experiment and write its report");
  common(verify, true);
  verify->add_option("id", o.experiment, "experiment id (default: config experiment)");
  auto* report = app.add_subcommand("report", "merge reports into a summary table");
  common(report, false);
  report->add_option("reports", o.reports, "report files or directories (default: --out or ./out)");
  common(app.add_subcommand("selftest", "run the fast invariants"), false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "modspace: " << e.what() << '\n';
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (o.threads) set_thread_count(*o.threads);
    if (cmd == "norm") return cmd_norm(o, out);
    if (cmd == "ap") return cmd_ap(o, out);
    if (cmd == "doubling") return cmd_doubling(o, out);
    if (cmd == "reduce") return cmd_reduce(o, out);
    if (cmd == "verify") return cmd_verify(o, out);
    if (cmd == "report") return cmd_report(o, out);
    return selftest(out);
  } catch (const Error& e) {
    err << "modspace: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "modspace: " << e.what() << '\n';
    return 4;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace modspace::cli
