// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <fstream>
#include <sstream>

#include "modspace/cli/cli.hpp"
#include "modspace/error.hpp"

namespace modspace::cli {

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, "config: cannot read '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  json j;
  try {
    j = json::parse(text.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config, "config: '" + path + "' is not valid JSON (" + e.what() + ")");
  }
  return experiment_config_from_json(j);
}

}  // namespace modspace::cli
