// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "modspace/cli/cli.hpp"
#include "modspace/core/io.hpp"

namespace fs = std::filesystem;
using modspace::json;

namespace {

json base_config() {
  return json::parse(R"({
    "grid": {"n": 1, "m": 1, "N": 256, "L": 12.0},
    "window": {"K": 16, "profile": "smooth-bump"},
    "weight": {"kind": "identity"},
    "corpus": {"seed": 7, "size": 12, "family": "mixed"},
    "params": {"s": 0, "p": 2, "q": 2, "eps": 2, "q0": 1, "q1": 2}
  })");
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

class Sandbox {
 public:
  Sandbox() : dir_(fs::temp_directory_path() / "modspace_test_cli") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string config(const json& j) const { return write("config.json", j.dump()); }
  std::string out() const { return (dir_ / "out").string(); }

 private:
  fs::path dir_;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = modspace::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"norm"}).code == 2);  // --config is required
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config diagnostics exit 2 and name the field") {
  Sandbox box;
  json j = base_config();
  j["grid"]["N"] = 250;
  Run r = run({"norm", "--config", box.config(j)});
  CHECK(r.code == 2);
  CHECK(r.err.find("grid.N") != std::string::npos);

  j = base_config();
  j["window"]["K"] = 60;
  r = run({"norm", "--config", box.config(j)});
  CHECK(r.code == 2);
  CHECK(r.err.find("window.K") != std::string::npos);

  j = base_config();
  j["params"]["colour"] = "red";
  r = run({"norm", "--config", box.config(j)});
  CHECK(r.code == 2);
  CHECK(r.err.find("colour") != std::string::npos);

  CHECK(run({"norm", "--config", box.write("bad.json", "{ not json")}).code == 2);
  CHECK(run({"norm", "--config", "/nonexistent/modspace.json"}).code == 2);
}

TEST_CASE("norm of the zero input is zero") {
  Sandbox box;
  json j = base_config();
  j["input"] = "zero";
  for (const char* norm : {"modulation", "stft", "lp"}) {
    j["norm"] = norm;
    const Run r = run({"norm", "--config", box.config(j)});
    CHECK(r.code == 0);
    CHECK(r.out == std::string(norm) + "[0] = 0\n");
  }
}

TEST_CASE("norm writes norms.json under --out") {
  Sandbox box;
  const Run r = run({"norm", "--config", box.config(base_config()), "--out", box.out(), "--threads", "2"});
  CHECK(r.code == 0);
  std::ifstream in(fs::path(box.out()) / "norms.json");
  REQUIRE(in);
  CHECK(json::parse(in)["values"].size() == 12);
}

TEST_CASE("seed override changes the corpus") {
  Sandbox box;
  const std::string cfg = box.config(base_config());
  const Run a = run({"norm", "--config", cfg});
  const Run b = run({"norm", "--config", cfg, "--seed", "8"});
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out != b.out);
}

TEST_CASE("verify exits 3 on a failed hypothesis") {
  Sandbox box;
  json j = base_config();
  j["params"]["eps"] = 0.5;
  Run r = run({"verify", "embedding-eps", "--config", box.config(j), "--out", box.out()});
  CHECK(r.code == 3);
  j = base_config();
  j["params"]["q"] = 1;
  r = run({"verify", "duality", "--config", box.config(j), "--out", box.out()});
  CHECK(r.code == 3);
}

TEST_CASE("non-finite input exits 4") {
  Sandbox box;
  modspace::VectorField f({1, 1, 256, 12.0}, modspace::Side::physical);
  f.at(0, 17) = std::numeric_limits<double>::quiet_NaN();
  const std::string path = box.write("nan.field", "");
  modspace::write_vector_field(path, f);
  json j = base_config();
  j["input"] = path;
  const Run r = run({"norm", "--config", box.config(j)});
  CHECK(r.code == 4);
  CHECK(r.err.find("non-finite") != std::string::npos);
}

TEST_CASE("verify then report") {
  Sandbox box;
  const std::string cfg = box.config(base_config());
  Run r = run({"verify", "sandwich", "--config", cfg, "--out", box.out()});
  CHECK(r.code == 0);
  CHECK(r.out.find("sandwich: PASS") != std::string::npos);
  CHECK(fs::exists(fs::path(box.out()) / "sandwich.json"));
  r = run({"report", "--out", box.out()});
  CHECK(r.code == 0);
  CHECK(r.out.find("sandwich") != std::string::npos);
  CHECK(fs::exists(fs::path(box.out()) / "summary.json"));
  CHECK(run({"verify", "nope", "--config", cfg, "--out", box.out()}).code == 2);
}

TEST_CASE("ap, doubling and reduce on the identity weight") {
  Sandbox box;
  const std::string cfg = box.config(base_config());
  Run r = run({"ap", "--config", cfg});
  CHECK(r.code == 0);
  CHECK(r.out.find("= 1\n") != std::string::npos);
  r = run({"doubling", "--config", cfg});
  CHECK(r.code == 0);
  CHECK(r.out.find("C = 2\n") != std::string::npos);
  r = run({"reduce", "--config", cfg, "--out", box.out()});
  CHECK(r.code == 0);
  CHECK(fs::exists(fs::path(box.out()) / "reducing_k0.bin"));
}

TEST_CASE("selftest passes") {
  const Run r = run({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("selftest passed") != std::string::npos);
}
