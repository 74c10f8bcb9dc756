// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <span>
#include <string>
#include <vector>

#include "modspace/core/io.hpp"

namespace modspace {

// One pass/fail criterion of an experiment. `value` is compared against
// `limit` in the direction the criterion names.
struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
  std::string detail;
};

// Measured band at one discretisation.
struct RefinementStep {
  std::string label;  // "base", "N->2N", "K->K+4"
  std::size_t N = 0;
  int K = 0;
  double C_min = 0.0;
  double C_max = 0.0;
  double drift = 0.0;  // max relative change of C_min, C_max against base
};

// A constructed violation. It is caught when pass is false.
struct NegativeControl {
  std::string name;
  bool pass = true;
  std::vector<Check> checks;
  std::string detail;
};

struct PlotSeries {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct VerificationReport {
  std::string id;
  json params;  // full experiment config; enough to re-run
  json hypotheses;
  std::vector<double> ratios;
  double C_min = 0.0;
  double C_max = 0.0;
  std::vector<RefinementStep> refinement;
  std::vector<Check> checks;
  std::vector<NegativeControl> controls;
  json tolerances = json::object();
  json extra = json::object();
  std::vector<PlotSeries> plots;
  bool pass = false;
  double runtime_s = 0.0;

  Check& add_check(std::string name, double value, double limit, bool pass, std::string detail = {});
  // pass = every check passed and every control was caught.
  void finalize();
};

json to_json(const Check& c);
json to_json(const VerificationReport& r);
VerificationReport report_from_json(const json& j);

// Writes <dir>/<id>.json, <dir>/<id>_ratios.csv and one
// <dir>/<id>_<plot>.dat per plot series. Returns the JSON path.
std::string write_report(const VerificationReport& r, const std::string& dir);

struct ReportSummary {
  std::string table;  // fixed-width text, one row per report
  json merged;
  bool all_pass = true;
};

ReportSummary summarize_reports(std::span<const VerificationReport> reports);

}  // namespace modspace
