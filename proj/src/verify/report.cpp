// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/verify/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "modspace/error.hpp"

namespace modspace {

namespace {

// JSON has no inf/nan; they travel as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

// Shortest round-tripping decimal.
std::string decimal(double v) {
  if (!std::isfinite(v)) return number(v).get<std::string>();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Check check_from_json(const json& j) {
  return {j.at("name").get<std::string>(), number_from(j.at("value")), number_from(j.at("limit")),
          j.at("pass").get<bool>(), j.value("detail", "")};
}

}  // namespace

Check& VerificationReport::add_check(std::string name, double value, double limit, bool ok, std::string detail) {
  checks.push_back({std::move(name), value, limit, ok, std::move(detail)});
  return checks.back();
}

void VerificationReport::finalize() {
  pass = !checks.empty();
  for (const auto& c : checks) pass = pass && c.pass;
  for (const auto& c : controls) pass = pass && !c.pass;
}

json to_json(const Check& c) {
  json j = {{"name", c.name}, {"value", number(c.value)}, {"limit", number(c.limit)}, {"pass", c.pass}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

json to_json(const VerificationReport& r) {
  json ratios = json::array();
  for (double v : r.ratios) ratios.push_back(number(v));
  json refinement = json::array();
  for (const auto& s : r.refinement)
    refinement.push_back({{"label", s.label}, {"N", s.N}, {"K", s.K}, {"C_min", number(s.C_min)},
                          {"C_max", number(s.C_max)}, {"drift", number(s.drift)}});
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json controls = json::array();
  for (const auto& c : r.controls) {
    json cc = json::array();
    for (const auto& k : c.checks) cc.push_back(to_json(k));
    controls.push_back({{"name", c.name}, {"pass", c.pass}, {"checks", cc}, {"detail", c.detail}});
  }
  return {{"id", r.id},
          {"params", r.params},
          {"hypotheses", r.hypotheses},
          {"ratios", ratios},
          {"C_min", number(r.C_min)},
          {"C_max", number(r.C_max)},
          {"refinement", refinement},
          {"checks", checks},
          {"negative_controls", controls},
          {"tolerances", r.tolerances},
          {"extra", r.extra},
          {"pass", r.pass},
          {"runtime_s", r.runtime_s}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  try {
    r.id = j.at("id").get<std::string>();
    r.params = j.value("params", json::object());
    r.hypotheses = j.value("hypotheses", json::object());
    for (const auto& v : j.at("ratios")) r.ratios.push_back(number_from(v));
    r.C_min = number_from(j.at("C_min"));
    r.C_max = number_from(j.at("C_max"));
    for (const auto& s : j.value("refinement", json::array()))
      r.refinement.push_back({s.at("label").get<std::string>(), s.at("N").get<std::size_t>(), s.at("K").get<int>(),
                              number_from(s.at("C_min")), number_from(s.at("C_max")), number_from(s.at("drift"))});
    for (const auto& c : j.value("checks", json::array())) r.checks.push_back(check_from_json(c));
    for (const auto& c : j.value("negative_controls", json::array())) {
      NegativeControl nc{c.at("name").get<std::string>(), c.at("pass").get<bool>(), {}, c.value("detail", "")};
      for (const auto& k : c.value("checks", json::array())) nc.checks.push_back(check_from_json(k));
      r.controls.push_back(std::move(nc));
    }
    r.tolerances = j.value("tolerances", json::object());
    r.extra = j.value("extra", json::object());
    r.pass = j.at("pass").get<bool>();
    r.runtime_s = j.value("runtime_s", 0.0);
  } catch (const json::exception& e) {
    fail(ErrorKind::io, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string write_report(const VerificationReport& r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::io, "cannot create output directory " + dir + ": " + ec.message());
  const std::string base = (std::filesystem::path(dir) / r.id).string();

  std::ofstream js(base + ".json");
  js << to_json(r).dump(2) << '\n';
  if (!js) fail(ErrorKind::io, "write failed for " + base + ".json");

  std::ofstream csv(base + "_ratios.csv");
  csv << "item,ratio\n";
  for (std::size_t i = 0; i < r.ratios.size(); ++i) csv << i << ',' << decimal(r.ratios[i]) << '\n';
  if (!csv) fail(ErrorKind::io, "write failed for " + base + "_ratios.csv");

  for (const auto& p : r.plots) {
    std::ofstream dat(base + "_" + p.name + ".dat");
    dat << '#';
    for (const auto& c : p.columns) dat << ' ' << c;
    dat << '\n';
    for (const auto& row : p.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) dat << (i ? " " : "") << decimal(row[i]);
      dat << '\n';
    }
    if (!dat) fail(ErrorKind::io, "write failed for " + base + "_" + p.name + ".dat");
  }
  return base + ".json";
}

ReportSummary summarize_reports(std::span<const VerificationReport> reports) {
  ReportSummary s;
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %-5s %14s %14s %10s %8s %9s\n", "experiment", "pass", "C_min", "C_max",
                "drift", "checks", "controls");
  os << line;
  s.merged = json::array();
  for (const auto& r : reports) {
    double drift = 0.0;
    for (const auto& st : r.refinement) drift = std::max(drift, st.drift);
    std::size_t ok = 0, caught = 0;
    for (const auto& c : r.checks) ok += c.pass;
    for (const auto& c : r.controls) caught += !c.pass;
    std::snprintf(line, sizeof line, "%-24s %-5s %14.6g %14.6g %10.3g %4zu/%-3zu %4zu/%-4zu\n", r.id.c_str(),
                  r.pass ? "yes" : "NO", r.C_min, r.C_max, drift, ok, r.checks.size(), caught, r.controls.size());
    os << line;
    s.all_pass = s.all_pass && r.pass;
    s.merged.push_back({{"id", r.id}, {"pass", r.pass}, {"C_min", number(r.C_min)}, {"C_max", number(r.C_max)},
                        {"max_drift", number(drift)}, {"runtime_s", r.runtime_s}});
  }
  s.table = os.str();
  return s;
}

}  // namespace modspace
